"""Gadget-chain reduction from Label Cover to shortest-path pricing, and its soundness tools.

Gadget ``i`` (1-based, one per Label Cover edge) runs from node ``entry`` to node
``exit``; consecutive gadgets share that node. Inside it there is a fixed
bypass edge of cost 2 and, for every allowed label pair, a branch

    entry --0--> u --pricable--> x --0--> exit

Shortcut edges go from ``x`` of a branch in gadget ``i`` to ``u`` of a
conflicting branch in gadget ``j > i`` and cost ``j - i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping

from .core import (
    INF,
    EdgeKind,
    Edge,
    Pricing,
    PurchaseResult,
    StackInstance,
    format_price,
    normalize_pricing,
)
from .errors import InequalityViolated, InputError
from .labelcover import Assignment, LabelCoverInstance

__all__ = [
    "Branch",
    "Gadget",
    "Shortcut",
    "ReductionMap",
    "SignificantGadget",
    "IslandDecomposition",
    "GadgetDiagnostics",
    "IslandDiagnostics",
    "conflicting",
    "reduce",
    "completeness_pricing",
    "decompose_islands",
    "extract_assignment",
    "island_diagnostics",
    "map_to_dict",
    "map_from_dict",
]

Pair = tuple[int, int]
BYPASS_COST = Fraction(2)


@dataclass(frozen=True)
class Branch:
    pair: Pair
    in_edge: int
    pricable: int
    out_edge: int
    u: int
    x: int


@dataclass(frozen=True)
class Gadget:
    index: int
    v: int
    w: int
    entry: int
    exit: int
    bypass: int
    branches: tuple[Branch, ...]


@dataclass(frozen=True)
class Shortcut:
    i: int
    pair_i: Pair
    j: int
    pair_j: Pair
    edge: int
    cost: int


@dataclass(frozen=True)
class ReductionMap:
    gadgets: tuple[Gadget, ...]
    shortcuts: tuple[Shortcut, ...]

    @property
    def m(self) -> int:
        return len(self.gadgets)

    @property
    def source(self) -> int:
        return self.gadgets[0].entry

    @property
    def sink(self) -> int:
        return self.gadgets[-1].exit

    def gadget(self, i: int) -> Gadget:
        return self.gadgets[i - 1]

    @cached_property
    def branch_of(self) -> dict[int, tuple[int, Branch]]:
        """Pricable edge id -> (gadget index, branch)."""
        return {b.pricable: (g.index, b) for g in self.gadgets for b in g.branches}

    @cached_property
    def shortcut_of(self) -> dict[int, Shortcut]:
        return {s.edge: s for s in self.shortcuts}

    @cached_property
    def shortcut_between(self) -> dict[tuple[int, int], Shortcut]:
        """(tail pricable edge, head pricable edge) -> shortcut."""
        out = {}
        for s in self.shortcuts:
            a = self._branch(s.i, s.pair_i).pricable
            b = self._branch(s.j, s.pair_j).pricable
            out[(a, b)] = s
        return out

    def _branch(self, i: int, pair: Pair) -> Branch:
        for b in self.gadget(i).branches:
            if b.pair == pair:
                return b
        raise KeyError((i, pair))


def conflicting(lc: LabelCoverInstance, i: int, pair_i: Pair, j: int, pair_j: Pair) -> bool:
    """Two label pairs on (1-based) edges i, j disagree on a shared vertex."""
    ei, ej = lc.edges[i - 1], lc.edges[j - 1]
    return (ei.v == ej.v and pair_i[0] != pair_j[0]) or (ei.w == ej.w and pair_i[1] != pair_j[1])


def reduce(lc: LabelCoverInstance) -> tuple[StackInstance, ReductionMap]:
    """Compile ``lc`` into a gadget chain; nodes and edges are numbered left to right."""
    lc.validate()
    if lc.m == 0:
        raise InputError("label cover instance has no edges")
    edges: list[Edge] = []

    def add(tail, head, kind, cost=0):
        edges.append(Edge(len(edges), tail, head, kind, Fraction(cost)))
        return edges[-1].id

    next_node = 1
    gadgets = []
    entry = 0
    for i, lce in enumerate(lc.edges, start=1):
        uxs = []
        for _ in lce.relation:
            uxs.append((next_node, next_node + 1))
            next_node += 2
        exit_ = next_node
        next_node += 1
        bypass = add(entry, exit_, EdgeKind.FIXED, BYPASS_COST)
        branches = []
        for pair, (u, x) in zip(lce.relation, uxs):
            e_in = add(entry, u, EdgeKind.FIXED)
            e_p = add(u, x, EdgeKind.PRICABLE)
            e_out = add(x, exit_, EdgeKind.FIXED)
            branches.append(Branch(pair, e_in, e_p, e_out, u, x))
        gadgets.append(Gadget(i, lce.v, lce.w, entry, exit_, bypass, tuple(branches)))
        entry = exit_

    shortcuts = []
    for gi in gadgets:
        for bi in gi.branches:
            for gj in gadgets[gi.index:]:
                for bj in gj.branches:
                    if conflicting(lc, gi.index, bi.pair, gj.index, bj.pair):
                        cost = gj.index - gi.index - 1
                        eid = add(bi.x, bj.u, EdgeKind.FIXED, cost)
                        shortcuts.append(Shortcut(gi.index, bi.pair, gj.index, bj.pair, eid, cost))

    rmap = ReductionMap(tuple(gadgets), tuple(shortcuts))
    inst = StackInstance(next_node, tuple(edges), rmap.source, rmap.sink)
    return inst, rmap


def completeness_pricing(rmap: ReductionMap, a: Assignment) -> dict:
    """Price 2 on branches consistent with ``a``, INF on every other branch."""
    p = {}
    for g in rmap.gadgets:
        want = (a.left_labels[g.v], a.right_labels[g.w])
        for b in g.branches:
            p[b.pricable] = BYPASS_COST if b.pair == want else INF
    return p


# -- islands ----------------------------------------------------------------

@dataclass(frozen=True)
class SignificantGadget:
    gadget: int
    p_edge: int
    pair: Pair
    price: Fraction
    path_pos: int  # index of the P-edge within the purchased path
    start: bool
    end: bool
    in_len: int
    out_len: int
    link_len: int  # length of the shortcut to the next significant gadget; 0 at end points


@dataclass(frozen=True)
class IslandDecomposition:
    """Greedy island structure of a purchased path.

    ``islands`` holds ``(alpha, omega)`` positions (0-based, inclusive) into
    ``significant``.
    """

    pricing: dict
    purchase: PurchaseResult
    p_edges: dict  # gadget index -> P-edge id
    significant: tuple[SignificantGadget, ...]
    islands: tuple[tuple[int, int], ...]

    @property
    def r(self) -> int:
        return len(self.significant)


def decompose_islands(inst: StackInstance, rmap: ReductionMap, p: Pricing) -> IslandDecomposition:
    """Normalize ``p``, buy a path and split its P-edges into islands."""
    normalized, purchase = normalize_pricing(inst, p)
    path = purchase.path
    p_edges = {}
    position = {}
    for pos, eid in enumerate(path):
        if eid in rmap.branch_of:
            g, _ = rmap.branch_of[eid]
            assert g not in p_edges, "path crosses a gadget twice"
            p_edges[g] = eid
            position[g] = pos
    owners = sorted(p_edges)

    def linked(g1, g2):
        return rmap.shortcut_between.get((p_edges[g1], p_edges[g2]))

    # greedy: jump to the farthest linked P-edge, else close the island
    chain = []  # (gadget, is_start, is_end, link shortcut or None)
    if owners:
        current, is_start = owners[0], True
        while True:
            later = [g for g in owners if g > current and linked(current, g)]
            if later:
                nxt = max(later)
                chain.append((current, is_start, False, linked(current, nxt)))
                current, is_start = nxt, False
                continue
            chain.append((current, is_start, True, None))
            rest = [g for g in owners if g > current]
            if not rest:
                break
            current, is_start = rest[0], True

    def shortcut_len(eid):
        s = rmap.shortcut_of.get(eid)
        return s.cost if s is not None else 0

    significant = []
    for g, is_start, is_end, link in chain:
        pos = position[g]
        eid = p_edges[g]
        significant.append(
            SignificantGadget(
                gadget=g,
                p_edge=eid,
                pair=rmap.branch_of[eid][1].pair,
                price=normalized[eid],
                path_pos=pos,
                start=is_start,
                end=is_end,
                in_len=shortcut_len(path[pos - 1]),
                out_len=shortcut_len(path[pos + 1]),
                link_len=link.cost if link is not None else 0,
            )
        )

    islands = []
    alpha = None
    for idx, sg in enumerate(significant):
        if sg.start:
            alpha = idx
        if sg.end:
            islands.append((alpha, idx))
    return IslandDecomposition(normalized, purchase, p_edges, tuple(significant), tuple(islands))


def extract_assignment(lc: LabelCoverInstance, rmap: ReductionMap, dec: IslandDecomposition) -> Assignment:
    """Labels from the P-edges of significant gadgets at odd positions (sigma_1, sigma_3, ...).

    Unlabelled vertices get label 1.
    """
    left: dict[int, int] = {}
    right: dict[int, int] = {}
    for sg in dec.significant[::2]:
        g = rmap.gadget(sg.gadget)
        kappa, lam = sg.pair
        for store, vertex, label in ((left, g.v, kappa), (right, g.w, lam)):
            previous = store.setdefault(vertex, label)
            assert previous == label, f"odd significant gadgets disagree on vertex {vertex}"
    return Assignment(
        tuple(left.get(v, 1) for v in range(lc.left)),
        tuple(right.get(w, 1) for w in range(lc.right)),
    )


# -- diagnostics ------------------------------------------------------------

@dataclass(frozen=True)
class Comparison:
    name: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": format_price(self.lhs), "rhs": format_price(self.rhs), "holds": self.holds}


@dataclass(frozen=True)
class GadgetDiagnostics:
    """Per significant gadget quantities and the inequalities relating them.

    ``eq1``..``eq3`` are the textbook per-gadget bounds, evaluated literally.
    They double count a shortcut that is both the exit of this gadget and the
    entry of the next (``shared_link``); ``eq1_once``/``eq3_once`` count it once.
    ``shortcut_cmp`` (path cost from this P-edge's end to the next one's start
    versus the defining shortcut) and ``bypass_cmp`` (cost from the entering
    shortcut's tail to the exiting shortcut's head versus the all-bypass detour)
    follow from optimality of the purchased path and always hold.
    """

    position: int
    gadget: int
    price: Fraction
    in_len: int
    out_len: int
    link_len: int
    next_in_len: int
    seg_pricable: Fraction
    seg_fixed: Fraction
    shared_link: bool  # P goes straight from this P-edge to the next via one shortcut
    eq1: Comparison
    eq2: Comparison
    eq3: Comparison
    eq1_once: Comparison
    eq3_once: Comparison
    shortcut_cmp: Comparison | None
    bypass_cmp: Comparison


@dataclass(frozen=True)
class IslandDiagnostics:
    decomposition: IslandDecomposition
    m: int
    revenue: Fraction
    gadgets: tuple[GadgetDiagnostics, ...]
    global_bound: Comparison | None  # revenue <= 2(r-1) + m, only when r >= 1
    link_total: Comparison  # sum of link lengths <= m
    fact1: tuple[Comparison, ...]  # per island: in at start + out at end <= 0

    @property
    def r(self) -> int:
        return self.decomposition.r

    @property
    def c(self) -> Fraction:
        return self.revenue - self.m

    def bound_comparisons(self) -> list[Comparison]:
        out = [g for d in self.gadgets for g in (d.eq1, d.eq2, d.eq3)]
        if self.global_bound is not None:
            out.append(self.global_bound)
        return out

    def optimality_comparisons(self) -> list[Comparison]:
        out = [d.bypass_cmp for d in self.gadgets]
        out += [d.shortcut_cmp for d in self.gadgets if d.shortcut_cmp is not None]
        return out


def island_diagnostics(inst: StackInstance, rmap: ReductionMap, p: Pricing, strict: bool = False) -> IslandDiagnostics:
    """Compute in/out/link lengths, segment costs and every soundness inequality.

    Raises :class:`InequalityViolated` when an optimality comparison, Fact 1,
    the link-length total or the revenue decomposition fails; those indicate a
    bug. With ``strict=True`` the literal per-gadget bounds and the global
    bound must hold too.
    """
    dec = decompose_islands(inst, rmap, p)
    path = dec.purchase.path
    prices = dec.pricing
    sig = dec.significant
    m = rmap.m

    def seg_costs(lo, hi):
        pr = Fraction(0)
        fx = Fraction(0)
        for eid in path[lo:hi]:
            e = inst.edges[eid]
            if e.pricable:
                pr += prices[eid]
            else:
                fx += e.cost
        return pr, fx

    def shortcut_tail_node(pos):
        # node where the detour for the gadget at path position pos starts
        return inst.edges[path[pos - 1]].tail

    rows = []
    for idx, sg in enumerate(sig):
        pos = sg.path_pos
        nxt = sig[idx + 1] if idx + 1 < len(sig) else None
        next_in = nxt.in_len if nxt is not None else 0
        shared = nxt is not None and pos + 2 == nxt.path_pos
        lo = pos + 2
        hi = nxt.path_pos - 1 if nxt is not None else len(path)
        r_i, c_i = seg_costs(lo, max(lo, hi))
        # in the same island the next entry is part of the segment boundary; across islands
        # it is a zero-cost connector, so the segment formula above covers both cases
        eq_next_in = next_in if not sg.end else 0
        link = sg.link_len
        eq1 = Comparison("eq1", r_i, Fraction(link - sg.out_len - eq_next_in))
        eq2 = Comparison("eq2", sg.price, Fraction(2 + sg.in_len + sg.out_len))
        eq3 = Comparison("eq3", sg.price + r_i, Fraction(2 + link + sg.in_len - eq_next_in))
        once_in = 0 if shared else eq_next_in
        eq1_once = Comparison("eq1_once", r_i, Fraction(link - sg.out_len - once_in))
        eq3_once = Comparison("eq3_once", sg.price + r_i, Fraction(2 + link + sg.in_len - once_in))
        shortcut_cmp = None
        if not sg.end:
            between = sum(seg_costs(pos + 1, nxt.path_pos), Fraction(0))
            shortcut_cmp = Comparison("shortcut", between, Fraction(link))
        # in + price + out measured on the path against bypassing in+out+1 gadgets
        detour = Fraction(2 * (sg.in_len + sg.out_len + 1))
        bypass_cmp = Comparison("bypass", sum(seg_costs(pos - 1, pos + 2), Fraction(0)), detour)
        rows.append(
            GadgetDiagnostics(
                position=idx, gadget=sg.gadget, price=sg.price, in_len=sg.in_len,
                out_len=sg.out_len, link_len=link, next_in_len=eq_next_in,
                seg_pricable=r_i, seg_fixed=c_i, shared_link=shared,
                eq1=eq1, eq2=eq2, eq3=eq3, eq1_once=eq1_once, eq3_once=eq3_once, shortcut_cmp=shortcut_cmp, bypass_cmp=bypass_cmp,
            )
        )

    revenue = dec.purchase.revenue
    r = dec.r
    global_bound = Comparison("global", revenue, Fraction(2 * (r - 1) + m)) if r >= 1 else None
    link_total = Comparison("link_total", Fraction(sum(sg.link_len for sg in sig)), Fraction(m))
    fact1 = tuple(
        Comparison("fact1", Fraction(sig[a].in_len + sig[w].out_len), Fraction(0)) for a, w in dec.islands
    )
    diag = IslandDiagnostics(dec, m, revenue, tuple(rows), global_bound, link_total, fact1)

    for d in rows:
        for cmp in (d.bypass_cmp, d.shortcut_cmp):
            if cmp is not None and not cmp.holds:
                raise InequalityViolated(cmp.name, d.position, cmp.lhs, cmp.rhs)
    for j, cmp in enumerate(fact1):
        if not cmp.holds:
            raise InequalityViolated("fact1", dec.islands[j][0], cmp.lhs, cmp.rhs)
    if not link_total.holds:
        raise InequalityViolated("link_total", len(sig) - 1, link_total.lhs, link_total.rhs)
    accounted = sum((d.price + d.seg_pricable for d in rows), Fraction(0))
    if accounted != revenue:
        raise InequalityViolated("revenue_split", 0, accounted, revenue)
    if strict:
        for d in rows:
            for cmp in (d.eq1, d.eq2, d.eq3):
                if not cmp.holds:
                    raise InequalityViolated(cmp.name, d.position, cmp.lhs, cmp.rhs)
        if global_bound is not None and not global_bound.holds:
            raise InequalityViolated("global", len(sig) - 1, global_bound.lhs, global_bound.rhs)
    return diag


# -- JSON -------------------------------------------------------------------

def map_to_dict(rmap: ReductionMap) -> dict:
    return {
        "gadgets": [
            {
                "index": g.index,
                "v": g.v,
                "w": g.w,
                "entry": g.entry,
                "exit": g.exit,
                "bypass": g.bypass,
                "branches": [
                    {"pair": list(b.pair), "in": b.in_edge, "pricable": b.pricable, "out": b.out_edge, "u": b.u, "x": b.x}
                    for b in g.branches
                ],
            }
            for g in rmap.gadgets
        ],
        "shortcuts": [
            {"i": s.i, "pair_i": list(s.pair_i), "j": s.j, "pair_j": list(s.pair_j), "edge": s.edge, "cost": s.cost}
            for s in rmap.shortcuts
        ],
    }


def map_from_dict(data: Mapping) -> ReductionMap:
    try:
        gadgets = tuple(
            Gadget(
                int(g["index"]), int(g["v"]), int(g["w"]), int(g["entry"]), int(g["exit"]), int(g["bypass"]),
                tuple(
                    Branch(tuple(b["pair"]), int(b["in"]), int(b["pricable"]), int(b["out"]), int(b["u"]), int(b["x"]))
                    for b in g["branches"]
                ),
            )
            for g in data["gadgets"]
        )
        shortcuts = tuple(
            Shortcut(int(s["i"]), tuple(s["pair_i"]), int(s["j"]), tuple(s["pair_j"]), int(s["edge"]), int(s["cost"]))
            for s in data["shortcuts"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed reduction map: {exc}") from exc
    return ReductionMap(gadgets, shortcuts)
