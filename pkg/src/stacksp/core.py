"""Priced networks and the consumer's optimistic best response.

Costs and prices are :class:`fractions.Fraction` values. An infinite price is
the singleton :data:`INF`; edges carrying it are removed before any search.
"""

from __future__ import annotations

import enum
import heapq
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence, Union

from .errors import InputError, NoPath

__all__ = [
    "INF",
    "EdgeKind",
    "Edge",
    "StackInstance",
    "PurchaseResult",
    "Price",
    "Pricing",
    "as_rational",
    "as_price",
    "format_price",
    "validate_instance",
    "check_pricing",
    "consumer_best_response",
    "normalize_pricing",
    "instance_to_dict",
    "instance_from_dict",
    "pricing_to_dict",
    "pricing_from_dict",
]


class _Infinite:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __reduce__(self):
        return (_Infinite, ())


INF = _Infinite()

Price = Union[Fraction, _Infinite]
Pricing = Mapping[int, Price]


def as_rational(value) -> Fraction:
    """Parse an int, Fraction or ``"num/den"`` string into a Fraction.

    Floats are rejected: they cannot represent the ties the reduction relies on.
    """
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def as_price(value) -> Price:
    if value is INF or (isinstance(value, str) and value.strip().lower() == "inf"):
        return INF
    return as_rational(value)


def format_price(value: Price):
    """JSON form of a price: int when integral, ``"num/den"`` otherwise, ``"inf"``."""
    if value is INF:
        return "inf"
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


class EdgeKind(enum.Enum):
    FIXED = "fixed"
    PRICABLE = "pricable"


@dataclass(frozen=True)
class Edge:
    id: int
    tail: int
    head: int
    kind: EdgeKind
    cost: Fraction = Fraction(0)

    @property
    def pricable(self) -> bool:
        return self.kind is EdgeKind.PRICABLE


@dataclass(frozen=True)
class StackInstance:
    """Directed graph with fixed-cost and pricable edges and a source/sink pair.

    The constructor does not validate; use :func:`validate_instance`.
    """

    node_count: int
    edges: tuple[Edge, ...]
    source: int
    sink: int

    @classmethod
    def build(cls, node_count, edges, source, sink) -> "StackInstance":
        """Create an instance from ``(tail, head, kind, cost)`` tuples; ids are assigned densely."""
        built = []
        for i, (tail, head, kind, cost) in enumerate(edges):
            built.append(Edge(i, tail, head, EdgeKind(kind), as_rational(cost)))
        return cls(node_count, tuple(built), source, sink)

    @cached_property
    def out_edges(self) -> tuple[tuple[Edge, ...], ...]:
        adj: list[list[Edge]] = [[] for _ in range(self.node_count)]
        for e in sorted(self.edges, key=lambda e: e.id):
            adj[e.tail].append(e)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def in_edges(self) -> tuple[tuple[Edge, ...], ...]:
        adj: list[list[Edge]] = [[] for _ in range(self.node_count)]
        for e in self.edges:
            adj[e.head].append(e)
        return tuple(tuple(a) for a in adj)

    @cached_property
    def pricable_ids(self) -> tuple[int, ...]:
        return tuple(e.id for e in self.edges if e.pricable)

    @property
    def m(self) -> int:
        """Number of pricable edges."""
        return len(self.pricable_ids)

    def edge(self, edge_id: int) -> Edge:
        return self.edges[edge_id]

    def uniform(self, price) -> dict[int, Price]:
        """Pricing that puts the same price on every pricable edge."""
        price = as_price(price)
        return {i: price for i in self.pricable_ids}


@dataclass(frozen=True)
class PurchaseResult:
    path: tuple[int, ...]
    total_cost: Fraction
    revenue: Fraction
    pricable_count: int

    def to_dict(self) -> dict:
        return {
            "path": list(self.path),
            "cost": format_price(self.total_cost),
            "revenue": format_price(self.revenue),
            "pricable_count": self.pricable_count,
        }


def validate_instance(inst: StackInstance) -> list[str]:
    """Return one message per violated invariant; an empty list means valid."""
    problems = []
    if not isinstance(inst.node_count, int) or inst.node_count < 1:
        problems.append(f"node_count must be a positive integer, got {inst.node_count!r}")
    n = inst.node_count if isinstance(inst.node_count, int) else 0
    for name in ("source", "sink"):
        node = getattr(inst, name)
        if not isinstance(node, int) or not 0 <= node < n:
            problems.append(f"{name} {node!r} is not a node id below {n}")
    if inst.source == inst.sink:
        problems.append(f"source and sink coincide (node {inst.source})")
    seen = set()
    for pos, e in enumerate(inst.edges):
        if e.id != pos:
            problems.append(f"edge at position {pos} has id {e.id}; ids must be dense 0..{len(inst.edges) - 1}")
        if e.id in seen:
            problems.append(f"edge id {e.id} is duplicated")
        seen.add(e.id)
        for end in (e.tail, e.head):
            if not isinstance(end, int) or not 0 <= end < n:
                problems.append(f"edge {e.id} endpoint {end!r} is not a node id below {n}")
        if not isinstance(e.cost, (int, Fraction)) or isinstance(e.cost, bool):
            problems.append(f"edge {e.id} cost {e.cost!r} is not rational")
        elif e.cost < 0:
            problems.append(f"edge {e.id} has negative cost {e.cost}")
        elif e.pricable and e.cost != 0:
            problems.append(f"pricable edge {e.id} has nonzero fixed cost {e.cost}")
    return problems


def check_pricing(inst: StackInstance, p: Pricing) -> None:
    """Raise :class:`InputError` unless ``p`` prices exactly the pricable edges."""
    expected = set(inst.pricable_ids)
    got = set(p)
    if got != expected:
        missing = sorted(expected - got)
        extra = sorted(got - expected)
        raise InputError(f"pricing domain mismatch: missing {missing}, unexpected {extra}")
    for edge_id, price in p.items():
        if price is INF:
            continue
        if not isinstance(price, (int, Fraction)) or isinstance(price, bool):
            raise InputError(f"price of edge {edge_id} is not rational: {price!r}")
        if price < 0:
            raise InputError(f"price of edge {edge_id} is negative: {price}")


def _weight(e: Edge, p: Pricing):
    # (cost, -revenue); None for deleted edges
    if not e.pricable:
        return (e.cost, Fraction(0))
    price = p[e.id]
    if price is INF:
        return None
    price = Fraction(price)
    return (price, -price)


def _add(a, b):
    return (a[0] + b[0], a[1] + b[1])


def _distances_to_sink(inst: StackInstance, p: Pricing) -> dict:
    """Lexicographic (cost, -revenue) distance from every node to the sink.

    Dijkstra is valid because every edge weight is lexicographically >= (0, 0).
    """
    zero = (Fraction(0), Fraction(0))
    dist = {inst.sink: zero}
    heap = [(zero, inst.sink)]
    done = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for e in inst.in_edges[v]:
            w = _weight(e, p)
            if w is None:
                continue
            nd = _add(w, d)
            if e.tail not in dist or nd < dist[e.tail]:
                dist[e.tail] = nd
                heapq.heappush(heap, (nd, e.tail))
    return dist


def consumer_best_response(inst: StackInstance, p: Pricing) -> PurchaseResult:
    """Path bought by an optimistic consumer.

    Minimum total cost first, maximum revenue among cost ties, then the
    lexicographically smallest edge-id sequence. The returned path is simple.
    Raises :class:`NoPath` if the sink is unreachable without infinite prices.
    """
    check_pricing(inst, p)
    dist = _distances_to_sink(inst, p)
    if inst.source not in dist:
        raise NoPath(f"sink {inst.sink} unreachable from source {inst.source}")

    # Edges lying on some optimal route; any simple s-t path over them is optimal.
    tight: list[list[Edge]] = [[] for _ in range(inst.node_count)]
    for v in range(inst.node_count):
        if v not in dist:
            continue
        for e in inst.out_edges[v]:
            w = _weight(e, p)
            if w is not None and e.head in dist and _add(w, dist[e.head]) == dist[v]:
                tight[v].append(e)

    def reaches_sink(start, blocked):
        if start == inst.sink:
            return True
        queue = deque([start])
        seen = {start}
        while queue:
            v = queue.popleft()
            for e in tight[v]:
                if e.head == inst.sink:
                    return True
                if e.head not in seen and e.head not in blocked:
                    seen.add(e.head)
                    queue.append(e.head)
        return False

    path = []
    visited = {inst.source}
    v = inst.source
    while v != inst.sink:
        for e in tight[v]:
            if e.head not in visited and reaches_sink(e.head, visited):
                break
        else:  # pragma: no cover - a simple tight path always exists
            raise AssertionError("no simple continuation on tight subgraph")
        path.append(e.id)
        visited.add(e.head)
        v = e.head

    cost, neg_revenue = dist[inst.source]
    count = sum(1 for i in path if inst.edges[i].pricable)
    return PurchaseResult(tuple(path), cost, -neg_revenue, count)


def normalize_pricing(inst: StackInstance, p: Pricing) -> tuple[dict[int, Price], PurchaseResult]:
    """Keep prices on the purchased path, set every other pricable edge to INF.

    The consumer's purchase is unchanged by this: no path becomes cheaper.
    """
    result = consumer_best_response(inst, p)
    on_path = set(result.path)
    normalized = {i: (p[i] if i in on_path else INF) for i in inst.pricable_ids}
    return normalized, result


def path_cost(inst: StackInstance, p: Pricing, path: Sequence[int]) -> tuple[Fraction, Fraction]:
    """(total cost, revenue) of an explicit edge sequence; INF if it uses a deleted edge."""
    cost = Fraction(0)
    revenue = Fraction(0)
    for i in path:
        e = inst.edges[i]
        if e.pricable:
            price = p[i]
            if price is INF:
                return INF, Fraction(0)
            cost += price
            revenue += price
        else:
            cost += e.cost
    return cost, revenue


# -- JSON -------------------------------------------------------------------

def instance_to_dict(inst: StackInstance) -> dict:
    return {
        "nodes": inst.node_count,
        "edges": [
            {"id": e.id, "tail": e.tail, "head": e.head, "kind": e.kind.value, "cost": format_price(e.cost)}
            for e in inst.edges
        ],
        "s": inst.source,
        "t": inst.sink,
    }


def instance_from_dict(data: Mapping) -> StackInstance:
    try:
        edges = []
        for raw in data["edges"]:
            edges.append(
                Edge(int(raw["id"]), int(raw["tail"]), int(raw["head"]),
                     EdgeKind(raw["kind"]), as_rational(raw.get("cost", 0)))
            )
        edges.sort(key=lambda e: e.id)
        return StackInstance(int(data["nodes"]), tuple(edges), int(data["s"]), int(data["t"]))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed instance: {exc}") from exc


def pricing_to_dict(p: Pricing) -> dict:
    return {str(i): format_price(p[i]) for i in sorted(p)}


def pricing_from_dict(data: Mapping) -> dict[int, Price]:
    try:
        return {int(k): as_price(v) for k, v in data.items()}
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed pricing: {exc}") from exc
