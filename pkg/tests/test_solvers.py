import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stacksp.core import INF, StackInstance, consumer_best_response
from stacksp.errors import TooLarge, Unbounded
from stacksp.labelcover import brute_force_opt, generate_planted
from stacksp.reduction import completeness_pricing, reduce
from stacksp.solvers import (
    Limits,
    best_single_price,
    exact_optimal_pricing,
    pricable_profile,
    revenue_ceiling,
    solve_packing_lp,
    solve_packing_lp_bases,
    uniform_pricing,
)

from oracles import brute_profile, brute_uniform_revenue
from strategies import dags


def single_edge():
    return StackInstance.build(2, [(0, 1, "fixed", 5)], 0, 1)


class TestProfile:
    def test_graph_y(self, graph_y):
        assert pricable_profile(graph_y) == [4, 1, 0]

    def test_lc1(self, lc1):
        assert pricable_profile(reduce(lc1)[0]) == [2, 0]

    def test_single_edge(self):
        assert pricable_profile(single_edge()) == [5]

    @settings(max_examples=150, deadline=None)
    @given(dags())
    def test_matches_path_enumeration_on_dags(self, inst):
        expected = brute_profile(inst)
        if not expected:
            return
        f = pricable_profile(inst)
        assert {k: v for k, v in enumerate(f) if v is not INF} == expected


class TestSinglePrice:
    def test_graph_y(self, graph_y):
        q, res = best_single_price(graph_y)
        assert (q, res.revenue) == (3, 3)

    def test_lc1(self, lc1):
        q, res = best_single_price(reduce(lc1)[0])
        assert (q, res.revenue) == (2, 2)

    def test_no_pricable(self):
        q, res = best_single_price(single_edge())
        assert (q, res.revenue) == (0, 0)

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            best_single_price(StackInstance.build(2, [(0, 1, "pricable", 0)], 0, 1))

    @settings(max_examples=80, deadline=None)
    @given(dags(max_nodes=7, max_edges=12))
    def test_beats_grid(self, inst):
        if brute_profile(inst).get(0) is None:
            return
        _, res = best_single_price(inst)
        for step in range(0, 8 * max(inst.m, 1) + 1):
            q = Fraction(step, 4)
            assert brute_uniform_revenue(inst, q) <= res.revenue


class TestUniform:
    def test_graph_y(self, graph_y):
        assert uniform_pricing(graph_y, 3).revenue == 3

    def test_reduced_price_one(self):
        lc, _ = generate_planted(3, 3, 3, 12, 2, 0.5, 9)
        inst, _ = reduce(lc)
        res = uniform_pricing(inst, 1)
        assert (res.revenue, res.purchased.total_cost, res.purchased.pricable_count) == (12, 12, 12)

    def test_reduced_price_zero(self, lc3):
        res = uniform_pricing(reduce(lc3)[0], 0)
        assert (res.revenue, res.purchased.total_cost) == (0, 0)


class TestPackingLp:
    def test_split(self):
        assert solve_packing_lp(2, [(frozenset({0, 1}), Fraction(4))]) == (4, (0, 4))

    def test_infeasible(self):
        assert solve_packing_lp(0, [(frozenset(), Fraction(-1))]) is None

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            solve_packing_lp(2, [(frozenset({0}), Fraction(1))])

    def test_box(self):
        cons = [(frozenset({0}), Fraction(2)), (frozenset({1}), Fraction(3)), (frozenset({0, 1}), Fraction(4))]
        assert solve_packing_lp(2, cons) == (4, (1, 3))

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.frozensets(st.integers(0, n - 1), min_size=1), st.integers(-1, 6)), max_size=6),
    )))
    def test_simplex_matches_basis_enumeration(self, case):
        n, raw = case
        cons = [(s, Fraction(b)) for s, b in raw] + [(frozenset(range(n)), Fraction(8))]
        assert solve_packing_lp(n, cons) == solve_packing_lp_bases(n, cons)


class TestExact:
    def test_graph_y(self, graph_y):
        res = exact_optimal_pricing(graph_y)
        assert res.revenue == 4
        assert res.pricing[1] is INF
        assert res.pricing[3] + res.pricing[4] == 4
        assert res.pricing == {1: INF, 3: 0, 4: 4}

    def test_lc1(self, lc1):
        assert exact_optimal_pricing(reduce(lc1)[0]).revenue == 2

    def test_lc2(self, lc2):
        res = exact_optimal_pricing(reduce(lc2)[0])
        assert res.revenue == 4
        assert sorted(v for v in res.pricing.values() if v is not INF) == [2, 2]

    def test_unbounded(self):
        with pytest.raises(Unbounded):
            exact_optimal_pricing(StackInstance.build(2, [(0, 1, "pricable", 0)], 0, 1))

    def test_too_many_paths(self):
        lc, _ = generate_planted(2, 2, 3, 12, 2, 0.0, 1)
        with pytest.raises(TooLarge):
            exact_optimal_pricing(reduce(lc)[0], Limits(max_paths=100))

    def test_certificate_hint(self):
        lc, planted = generate_planted(3, 3, 3, 20, 1, 0.0, 7)
        inst, rmap = reduce(lc)
        assert revenue_ceiling(inst) == 40
        res = exact_optimal_pricing(inst, hint=completeness_pricing(rmap, planted))
        assert res.revenue == 40

    @settings(max_examples=60, deadline=None)
    @given(dags(max_nodes=6, max_edges=9))
    def test_orders_and_reproduces(self, inst):
        if brute_profile(inst).get(0) is None:
            return
        exact = exact_optimal_pricing(inst)
        _, single = best_single_price(inst)
        assert consumer_best_response(inst, exact.pricing).revenue == exact.revenue
        assert exact.revenue >= single.revenue
        for q in (0, Fraction(1, 2), 1, 2, 3):
            assert single.revenue >= uniform_pricing(inst, q).revenue
        assert exact.revenue <= revenue_ceiling(inst)

    def test_result_json(self, graph_y):
        data = json.loads(json.dumps(exact_optimal_pricing(graph_y).to_dict()))
        assert data == {"method": "exact", "revenue": 4, "pricing": {"1": "inf", "3": 0, "4": 4}, "path": [3, 4], "cost": 4}


@pytest.mark.parametrize("seed", range(6))
def test_reduced_sandwich(seed):
    lc, _ = generate_planted(2, 2, 2, 3, 1, 0.34, seed)
    _, opt = brute_force_opt(lc)
    inst, _ = reduce(lc)
    rev = exact_optimal_pricing(inst).revenue
    assert 2 * opt <= rev <= min(2 * lc.m, lc.m + 4 * opt)
