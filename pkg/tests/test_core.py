import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stacksp.core import (
    INF,
    Edge,
    EdgeKind,
    StackInstance,
    consumer_best_response,
    instance_from_dict,
    instance_to_dict,
    normalize_pricing,
    pricing_from_dict,
    pricing_to_dict,
    validate_instance,
)
from stacksp.errors import InputError, NoPath

from oracles import brute_consumer
from strategies import priced_dags


def single_edge(cost=5):
    return StackInstance.build(2, [(0, 1, "fixed", cost)], 0, 1)


class TestValidate:
    def test_valid(self):
        assert validate_instance(single_edge()) == []

    def test_pricable_with_cost(self):
        inst = StackInstance(2, (Edge(0, 0, 1, EdgeKind.PRICABLE, Fraction(1)),), 0, 1)
        problems = validate_instance(inst)
        assert len(problems) == 1
        assert "edge 0" in problems[0]

    def test_source_is_sink(self):
        inst = StackInstance(2, (Edge(0, 0, 1, EdgeKind.FIXED, Fraction(1)),), 1, 1)
        assert len(validate_instance(inst)) == 1

    def test_several_problems(self):
        inst = StackInstance(
            2,
            (Edge(0, 0, 5, EdgeKind.FIXED, Fraction(-1)), Edge(3, 0, 1, EdgeKind.FIXED, Fraction(0))),
            0,
            1,
        )
        problems = validate_instance(inst)
        assert any("endpoint 5" in s for s in problems)
        assert any("negative" in s for s in problems)
        assert any("dense" in s for s in problems)


class TestConsumer:
    def test_single_fixed_edge(self):
        res = consumer_best_response(single_edge(), {})
        assert (res.path, res.total_cost, res.revenue) == ((0,), 5, 0)

    def test_optimistic_tie(self):
        inst = StackInstance.build(2, [(0, 1, "fixed", 3), (0, 1, "pricable", 0)], 0, 1)
        res = consumer_best_response(inst, {1: Fraction(3)})
        assert res.path == (1,)
        assert (res.total_cost, res.revenue, res.pricable_count) == (3, 3, 1)

    def test_graph_y_uniform_3(self, graph_y):
        res = consumer_best_response(graph_y, graph_y.uniform(3))
        assert res.path == (1, 2)  # s->a->t
        assert (res.total_cost, res.revenue) == (4, 3)

    def test_graph_y_all_infinite(self, graph_y):
        res = consumer_best_response(graph_y, graph_y.uniform(INF))
        assert res.path == (0,)
        assert (res.total_cost, res.revenue) == (4, 0)

    def test_no_path(self):
        inst = StackInstance.build(2, [(0, 1, "pricable", 0)], 0, 1)
        with pytest.raises(NoPath):
            consumer_best_response(inst, {0: INF})

    def test_pricing_domain_checked(self, graph_y):
        with pytest.raises(InputError):
            consumer_best_response(graph_y, {1: Fraction(1)})
        with pytest.raises(InputError):
            consumer_best_response(graph_y, {1: Fraction(-1), 3: INF, 4: INF})

    def test_zero_cycle_gives_simple_path(self):
        # 0 -> 1 <-> 2 zero cycle, 1 -> 3 sink
        inst = StackInstance.build(
            4, [(0, 1, "fixed", 0), (1, 2, "fixed", 0), (2, 1, "pricable", 0), (1, 3, "fixed", 1), (2, 3, "fixed", 1)], 0, 3
        )
        res = consumer_best_response(inst, {2: Fraction(0)})
        assert res.path == (0, 1, 4)
        assert res.total_cost == 1

    @settings(max_examples=300, deadline=None)
    @given(priced_dags())
    def test_matches_enumeration(self, case):
        inst, p = case
        expected = brute_consumer(inst, p)
        if expected is None:
            with pytest.raises(NoPath):
                consumer_best_response(inst, p)
            return
        res = consumer_best_response(inst, p)
        assert (res.total_cost, res.revenue, res.path) == expected

    @settings(max_examples=100, deadline=None)
    @given(priced_dags())
    def test_deterministic(self, case):
        inst, p = case
        try:
            first = consumer_best_response(inst, p)
        except NoPath:
            return
        assert consumer_best_response(inst, dict(p)) == first


class TestNormalize:
    def test_fixpoint(self, graph_y):
        p = {1: INF, 3: Fraction(1), 4: Fraction(1)}
        q, _ = normalize_pricing(graph_y, p)
        assert q == p

    def test_graph_y_price_one(self, graph_y):
        q, res = normalize_pricing(graph_y, graph_y.uniform(1))
        assert res.path == (3, 4)
        assert (res.total_cost, res.revenue) == (2, 2)
        assert q == {1: INF, 3: 1, 4: 1}
        assert consumer_best_response(graph_y, q) == res

    def test_all_infinite_unchanged(self, graph_y):
        p = graph_y.uniform(INF)
        assert normalize_pricing(graph_y, p)[0] == p

    @settings(max_examples=200, deadline=None)
    @given(priced_dags())
    def test_same_purchase(self, case):
        inst, p = case
        try:
            q, res = normalize_pricing(inst, p)
        except NoPath:
            return
        again = consumer_best_response(inst, q)
        assert (again.path, again.total_cost, again.revenue) == (res.path, res.total_cost, res.revenue)

    @settings(max_examples=200, deadline=None)
    @given(priced_dags(), st.data())
    def test_raising_to_infinity_never_lowers_cost(self, case, data):
        inst, p = case
        if not inst.pricable_ids:
            return
        try:
            before = consumer_best_response(inst, p)
        except NoPath:
            return
        edge = data.draw(st.sampled_from(inst.pricable_ids))
        try:
            after = consumer_best_response(inst, {**p, edge: INF})
        except NoPath:
            return
        assert after.total_cost >= before.total_cost


class TestJson:
    def test_instance_round_trip(self, graph_y):
        data = json.loads(json.dumps(instance_to_dict(graph_y)))
        assert instance_from_dict(data) == graph_y
        assert data["edges"][1] == {"id": 1, "tail": 0, "head": 1, "kind": "pricable", "cost": 0}

    def test_pricing_round_trip(self):
        p = {0: Fraction(3, 2), 4: INF, 2: Fraction(7)}
        data = pricing_to_dict(p)
        assert data == {"0": "3/2", "2": 7, "4": "inf"}
        assert pricing_from_dict(json.loads(json.dumps(data))) == p

    def test_rejects_floats(self):
        with pytest.raises(InputError):
            pricing_from_dict({"0": 1.5})
