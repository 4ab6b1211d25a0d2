"""Leader-side solvers: exact optimum by support enumeration, best uniform price, fixed uniform price."""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    INF,
    PurchaseResult,
    StackInstance,
    as_rational,
    consumer_best_response,
    format_price,
    pricing_to_dict,
)
from .errors import InputError, NoPath, TooLarge, Unbounded

__all__ = [
    "SolverResult",
    "Limits",
    "pricable_profile",
    "best_single_price",
    "uniform_pricing",
    "exact_optimal_pricing",
    "simple_paths",
    "revenue_ceiling",
    "solve_packing_lp",
    "solve_packing_lp_bases",
]


@dataclass(frozen=True)
class SolverResult:
    method: str
    pricing: dict
    revenue: Fraction
    purchased: PurchaseResult

    def to_dict(self) -> dict:
        return {
            "method": self.method,
            "revenue": format_price(self.revenue),
            "pricing": pricing_to_dict(self.pricing),
            "path": list(self.purchased.path),
            "cost": format_price(self.purchased.total_cost),
        }


@dataclass(frozen=True)
class Limits:
    max_paths: int = 10_000
    max_support: int = 12  # pricable edges on one candidate support


def _evaluate(inst, method, pricing) -> SolverResult:
    purchased = consumer_best_response(inst, pricing)
    return SolverResult(method, dict(pricing), purchased.revenue, purchased)


def pricable_profile(inst: StackInstance) -> list:
    """``f[k]``: cheapest fixed cost of a source-sink walk with exactly ``k`` pricable edges.

    Entries are Fractions or INF for k = 0..K, where K is the largest count
    attained by some walk (trailing INF entries are dropped).
    """
    K = inst.m
    dist = {(inst.source, 0): Fraction(0)}
    heap = [(Fraction(0), inst.source, 0)]
    done = set()
    while heap:
        d, v, k = heapq.heappop(heap)
        if (v, k) in done:
            continue
        done.add((v, k))
        for e in inst.out_edges[v]:
            nk = k + 1 if e.pricable else k
            if nk > K:
                continue
            nd = d + e.cost
            state = (e.head, nk)
            if state not in dist or nd < dist[state]:
                dist[state] = nd
                heapq.heappush(heap, (nd, e.head, nk))
    f = [dist.get((inst.sink, k), INF) for k in range(K + 1)]
    if all(x is INF for x in f):
        raise NoPath("sink unreachable from source")
    while f[-1] is INF:
        f.pop()
    return f


def _envelope_revenue(f, q):
    """Revenue at uniform price q: q times the largest k minimizing f[k] + k q."""
    best = None
    best_k = 0
    for k, fk in enumerate(f):
        if fk is INF:
            continue
        y = fk + k * q
        if best is None or y <= best:
            best, best_k = y, k
    return q * best_k


def best_single_price(inst: StackInstance) -> tuple[Fraction, SolverResult]:
    """Exact revenue-maximizing uniform price.

    Revenue is piecewise linear in q and increasing on every piece of the
    lower envelope of ``f[k] + k q``, so the optimum sits at a breakpoint.
    Ties between prices go to the smallest one.
    """
    f = pricable_profile(inst)
    if f[0] is INF:
        raise Unbounded("every source-sink path uses a pricable edge")
    candidates = {Fraction(0)}
    finite = [(k, fk) for k, fk in enumerate(f) if fk is not INF]
    for (a, fa), (b, fb) in itertools.combinations(finite, 2):
        q = (fa - fb) / (b - a)
        if q >= 0:
            candidates.add(q)
    best_q = max(sorted(candidates), key=lambda q: (_envelope_revenue(f, q), -q))
    result = _evaluate(inst, "single-price", inst.uniform(best_q))
    assert result.revenue == _envelope_revenue(f, best_q)
    return best_q, result


def uniform_pricing(inst: StackInstance, q) -> SolverResult:
    q = as_rational(q)
    if q < 0:
        raise InputError(f"uniform price must be nonnegative, got {q}")
    return _evaluate(inst, "uniform", inst.uniform(q))


def simple_paths(inst: StackInstance, max_paths: int) -> list[tuple[int, ...]]:
    """Every simple source-sink path as an edge-id tuple, in lexicographic order."""
    out = []
    stack = [(inst.source, (), frozenset([inst.source]))]
    # explicit DFS; children pushed in reverse to pop in increasing edge id
    while stack:
        v, path, seen = stack.pop()
        if v == inst.sink:
            out.append(path)
            if len(out) > max_paths:
                raise TooLarge(f"more than {max_paths} simple source-sink paths")
            continue
        for e in reversed(inst.out_edges[v]):
            if e.head not in seen:
                stack.append((e.head, path + (e.id,), seen | {e.head}))
    return out


def _solve(a, b):
    """Solve the square system a x = b over the rationals; None if singular."""
    n = len(a)
    rows = [list(r) + [rhs] for r, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return None
        rows[col], rows[pivot] = rows[pivot], rows[col]
        pv = rows[col][col]
        rows[col] = [x / pv for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def solve_packing_lp_bases(n: int, constraints: Sequence[tuple[frozenset, Fraction]]):
    """Maximize sum(x) s.t. sum_{i in S} x_i <= b_S for each (S, b_S), x >= 0, by basis enumeration.

    Returns ``(value, x)`` with ``x`` the lexicographically least optimal
    vertex, or None if infeasible. Raises :class:`Unbounded` when some
    variable is in no constraint. Exponential; kept as a cross-check for
    :func:`solve_packing_lp`.
    """
    if n == 0:
        return (Fraction(0), ()) if all(b >= 0 for _, b in constraints) else None
    _check_covered(n, constraints)
    rows = [([Fraction(1) if i in s else Fraction(0) for i in range(n)], Fraction(b)) for s, b in constraints]
    rows += [([Fraction(-1) if i == j else Fraction(0) for i in range(n)], Fraction(0)) for j in range(n)]
    best = None
    for basis in itertools.combinations(range(len(rows)), n):
        x = _solve([rows[i][0] for i in basis], [rows[i][1] for i in basis])
        if x is None:
            continue
        if any(sum(c * xi for c, xi in zip(coef, x)) > rhs for coef, rhs in rows):
            continue
        key = (-sum(x), tuple(x))
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return -best[0], best[1]


def _check_covered(n, constraints):
    covered = set().union(*(s for s, _ in constraints)) if constraints else set()
    if len(covered) < n:
        raise Unbounded("a price appears in no constraint")


def solve_packing_lp(n: int, constraints: Sequence[tuple[frozenset, Fraction]]):
    """Same contract as :func:`solve_packing_lp_bases`, solved by an exact simplex.

    Pivoting follows Bland's rule on the lexicographic objective
    (sum(x), -x_0, -x_1, ...), so the final basis is the lexicographically
    least optimal vertex. The slack basis is feasible because every
    right-hand side must be >= 0; a negative one means infeasible.
    """
    if any(b < 0 for _, b in constraints):
        return None
    if n == 0:
        return Fraction(0), ()
    _check_covered(n, constraints)
    rows_count = len(constraints)
    width = n + rows_count
    zero, one = Fraction(0), Fraction(1)
    tableau = []
    for r, (s, b) in enumerate(constraints):
        row = [one if i in s else zero for i in range(n)] + [zero] * rows_count + [Fraction(b)]
        row[n + r] = one
        tableau.append(row)
    basis = [n + r for r in range(rows_count)]
    # reduced costs of sum(x), then of -x_i for the lexicographic tie-break
    objective = [[one] * n + [zero] * (rows_count + 1)]
    for i in range(n):
        row = [zero] * (width + 1)
        row[i] = -one
        objective.append(row)

    def improving(col):
        for obj in objective:
            if obj[col] != 0:
                return obj[col] > 0
        return False

    while True:
        col = next((c for c in range(width) if improving(c)), None)
        if col is None:
            break
        best_row = best_ratio = None
        for r in range(rows_count):
            a = tableau[r][col]
            if a > 0:
                ratio = tableau[r][-1] / a
                if best_row is None or ratio < best_ratio or (ratio == best_ratio and basis[r] < basis[best_row]):
                    best_row, best_ratio = r, ratio
        if best_row is None:  # pragma: no cover - excluded by the coverage check
            raise Unbounded("unbounded direction")
        pv = tableau[best_row][col]
        pivot = [v / pv for v in tableau[best_row]]
        tableau[best_row] = pivot
        for r in range(rows_count):
            if r != best_row and tableau[r][col] != 0:
                f = tableau[r][col]
                tableau[r] = [v - f * w for v, w in zip(tableau[r], pivot)]
        for k, obj in enumerate(objective):
            if obj[col] != 0:
                f = obj[col]
                objective[k] = [v - f * w for v, w in zip(obj, pivot)]
        basis[best_row] = col

    x = [zero] * n
    for r, var in enumerate(basis):
        if var < n:
            x[var] = tableau[r][-1]
    return sum(x, zero), tuple(x)


def _prune(constraints: dict) -> list:
    """Drop constraints implied by a stronger one on a superset (valid since x >= 0)."""
    items = sorted(constraints.items(), key=lambda kv: (-len(kv[0]), sorted(kv[0])))
    kept = []
    for s, b in items:
        if any(s <= t and bt <= b for t, bt in kept):
            continue
        kept.append((s, b))
    return kept


def revenue_ceiling(inst: StackInstance) -> Fraction:
    """Upper bound on any revenue: the best pricable-free path cost minus the least fixed cost."""
    f = pricable_profile(inst)
    if f[0] is INF:
        raise Unbounded("every source-sink path uses a pricable edge")
    return f[0] - min(x for x in f if x is not INF)


def exact_optimal_pricing(inst: StackInstance, limits: Limits | None = None, hint=None) -> SolverResult:
    """Optimal pricing by enumerating every simple path as the purchased support.

    For a support P (other pricable edges INF) the prices on P obey, for every
    path Q using only P's pricable edges, sum of prices on P minus Q
    <= fixed(Q) - fixed(P). Weak inequalities suffice because the consumer
    breaks cost ties toward revenue. Ties between supports go to the
    lexicographically smaller path.

    A ``hint`` pricing whose revenue reaches :func:`revenue_ceiling` is optimal
    and is returned without enumeration.
    """
    limits = limits or Limits()
    if hint is not None:
        certified = _evaluate(inst, "exact", hint)
        if certified.revenue == revenue_ceiling(inst):
            return certified
    paths = simple_paths(inst, limits.max_paths)
    if not paths:
        raise NoPath("sink unreachable from source")
    # paths with equal pricable sets share one LP; only the cheapest (then lex-first) can be feasible
    cheapest: dict = {}
    for path in paths:
        support = frozenset(i for i in path if inst.edges[i].pricable)
        cost = sum((inst.edges[i].cost for i in path if not inst.edges[i].pricable), Fraction(0))
        if support not in cheapest or cost < cheapest[support][0]:
            cheapest[support] = (cost, path)
    if frozenset() not in cheapest:
        raise Unbounded("every source-sink path uses a pricable edge")

    best = None
    for support, (cost, path) in sorted(cheapest.items(), key=lambda kv: kv[1][1]):
        if len(support) > limits.max_support:
            raise TooLarge(f"support with {len(support)} pricable edges exceeds max_support={limits.max_support}")
        order = sorted(support)
        pos = {e: i for i, e in enumerate(order)}
        cons: dict = {}
        for other, (other_cost, _) in cheapest.items():
            if other < support:
                s_idx = frozenset(pos[e] for e in support - other)
                cons[s_idx] = other_cost - cost
        if any(b < 0 for b in cons.values()):
            continue
        solved = solve_packing_lp(len(order), _prune(cons))
        if solved is None:
            continue
        value, x = solved
        if best is None or value > best[0]:
            prices = {e: INF for e in inst.pricable_ids}
            prices.update(zip(order, x))
            best = (value, path, prices)
    assert best is not None
    value, _, prices = best
    result = _evaluate(inst, "exact", prices)
    assert result.revenue == value, (result.revenue, value)
    return result
