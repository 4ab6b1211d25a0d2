"""Label Cover instances, assignment scoring, exhaustive optimum and a planted generator."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import InputError, InvalidParams, TooLarge

__all__ = [
    "LCEdge",
    "LabelCoverInstance",
    "Assignment",
    "satisfied_count",
    "brute_force_opt",
    "generate_planted",
    "lc_to_dict",
    "lc_from_dict",
    "assignment_to_dict",
    "assignment_from_dict",
]

Pair = tuple[int, int]


@dataclass(frozen=True)
class LCEdge:
    v: int
    w: int
    relation: tuple[Pair, ...]  # sorted, duplicate-free

    @classmethod
    def make(cls, v: int, w: int, relation: Iterable[Iterable[int]]) -> "LCEdge":
        return cls(v, w, tuple(sorted({(int(a), int(b)) for a, b in relation})))


@dataclass(frozen=True)
class LabelCoverInstance:
    """Bipartite constraint instance; left vertices 0..left-1, right 0..right-1, labels 1..k.

    Edge order is significant: the reduction turns edge ``i`` into gadget ``i + 1``.
    """

    left: int
    right: int
    k: int
    edges: tuple[LCEdge, ...]

    @classmethod
    def make(cls, left, right, k, edges) -> "LabelCoverInstance":
        """Build from ``(v, w, relation)`` triples and validate."""
        lc = cls(left, right, k, tuple(LCEdge.make(v, w, rel) for v, w, rel in edges))
        lc.validate()
        return lc

    @property
    def m(self) -> int:
        return len(self.edges)

    def validate(self) -> None:
        for name in ("left", "right", "k"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise InputError(f"{name} must be a positive integer, got {value!r}")
        for i, e in enumerate(self.edges):
            if not 0 <= e.v < self.left or not 0 <= e.w < self.right:
                raise InputError(f"edge {i} endpoints ({e.v}, {e.w}) out of range")
            for a, b in e.relation:
                if not (1 <= a <= self.k and 1 <= b <= self.k):
                    raise InputError(f"edge {i} relation pair ({a}, {b}) outside labels 1..{self.k}")


@dataclass(frozen=True)
class Assignment:
    left_labels: tuple[int, ...]
    right_labels: tuple[int, ...]

    def check(self, lc: LabelCoverInstance) -> None:
        if len(self.left_labels) != lc.left or len(self.right_labels) != lc.right:
            raise InputError("assignment does not cover every vertex")
        for label in self.left_labels + self.right_labels:
            if not 1 <= label <= lc.k:
                raise InputError(f"label {label} outside 1..{lc.k}")


def satisfied_count(lc: LabelCoverInstance, a: Assignment) -> int:
    a.check(lc)
    return sum(
        1 for e in lc.edges if (a.left_labels[e.v], a.right_labels[e.w]) in e.relation
    )


def brute_force_opt(lc: LabelCoverInstance, limit: int = 10**6) -> tuple[Assignment, int]:
    """Exhaustive maximum; ties go to the first assignment in lexicographic order.

    Assignments are ordered as the tuple (left labels..., right labels...).
    """
    total = lc.k ** (lc.left + lc.right)
    if total > limit:
        raise TooLarge(f"{total} assignments exceed limit {limit}")
    labels = range(1, lc.k + 1)
    best = None
    best_count = -1
    relations = [(e.v, lc.left + e.w, frozenset(e.relation)) for e in lc.edges]
    for combo in itertools.product(labels, repeat=lc.left + lc.right):
        count = sum(1 for v, w, rel in relations if (combo[v], combo[w]) in rel)
        if count > best_count:
            best, best_count = combo, count
            if count == lc.m:
                break
    return Assignment(best[: lc.left], best[lc.left:]), best_count


def generate_planted(left, right, k, m, decoys_per_edge=1, corrupt_fraction=0.0, seed=0):
    """Random instance satisfiable by a hidden assignment, except for corrupted edges.

    Returns ``(instance, planted_assignment)``. Exactly ``round(corrupt_fraction * m)``
    edges lose the planted pair in favour of a random other pair. Decoy pairs never
    equal the planted pair.
    """
    for name, value in (("left", left), ("right", right), ("k", k), ("m", m)):
        if not isinstance(value, int) or value < 1:
            raise InvalidParams(f"{name} must be a positive integer, got {value!r}")
    if not isinstance(decoys_per_edge, int) or decoys_per_edge < 0:
        raise InvalidParams(f"decoys_per_edge must be a nonnegative integer, got {decoys_per_edge!r}")
    if not 0 <= corrupt_fraction <= 1:
        raise InvalidParams(f"corrupt_fraction must lie in [0, 1], got {corrupt_fraction!r}")
    n_corrupt = round(corrupt_fraction * m)
    others = k * k - 1
    if decoys_per_edge + (1 if n_corrupt else 0) > others:
        raise InvalidParams(f"k={k} leaves only {others} non-planted pairs per edge")

    rng = random.Random(seed)
    hidden_left = tuple(rng.randint(1, k) for _ in range(left))
    hidden_right = tuple(rng.randint(1, k) for _ in range(right))
    corrupt = set(rng.sample(range(m), n_corrupt))
    all_pairs = [(a, b) for a in range(1, k + 1) for b in range(1, k + 1)]

    edges = []
    for i in range(m):
        v = rng.randrange(left)
        w = rng.randrange(right)
        planted = (hidden_left[v], hidden_right[w])
        pool = [pair for pair in all_pairs if pair != planted]
        extra = 1 if i in corrupt else 0
        chosen = rng.sample(pool, decoys_per_edge + extra)
        relation = chosen if i in corrupt else chosen + [planted]
        edges.append(LCEdge.make(v, w, relation))
    lc = LabelCoverInstance(left, right, k, tuple(edges))
    return lc, Assignment(hidden_left, hidden_right)


# -- JSON -------------------------------------------------------------------

def lc_to_dict(lc: LabelCoverInstance) -> dict:
    return {
        "left": lc.left,
        "right": lc.right,
        "k": lc.k,
        "edges": [{"v": e.v, "w": e.w, "rel": [list(pair) for pair in e.relation]} for e in lc.edges],
    }


def lc_from_dict(data: Mapping) -> LabelCoverInstance:
    try:
        edges = [(int(e["v"]), int(e["w"]), e["rel"]) for e in data["edges"]]
        return LabelCoverInstance.make(int(data["left"]), int(data["right"]), int(data["k"]), edges)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed label cover instance: {exc}") from exc


def assignment_to_dict(a: Assignment) -> dict:
    return {"left": list(a.left_labels), "right": list(a.right_labels)}


def assignment_from_dict(data: Mapping) -> Assignment:
    try:
        return Assignment(tuple(int(x) for x in data["left"]), tuple(int(x) for x in data["right"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed assignment: {exc}") from exc
