"""Independent brute-force oracles. Nothing here calls the code under test's search routines."""

from fractions import Fraction
from itertools import product

import networkx as nx

from stacksp.core import INF


def all_paths(inst, p=None):
    """Every simple s-t path (edge-id tuple), skipping INF-priced edges if a pricing is given."""
    g = nx.MultiDiGraph()
    g.add_nodes_from(range(inst.node_count))
    for e in inst.edges:
        if p is not None and e.pricable and p[e.id] is INF:
            continue
        g.add_edge(e.tail, e.head, key=e.id)
    return [tuple(k for _, _, k in path) for path in nx.all_simple_edge_paths(g, inst.source, inst.sink)]


def cost_and_revenue(inst, p, path):
    cost = revenue = Fraction(0)
    for i in path:
        e = inst.edges[i]
        if e.pricable:
            cost += p[i]
            revenue += p[i]
        else:
            cost += e.cost
    return cost, revenue


def brute_consumer(inst, p):
    """(cost, revenue, path) minimizing (cost, -revenue, path); None when no path."""
    best = None
    for path in all_paths(inst, p):
        cost, revenue = cost_and_revenue(inst, p, path)
        key = (cost, -revenue, path)
        if best is None or key < best:
            best = key
    if best is None:
        return None
    return best[0], -best[1], best[2]


def brute_profile(inst):
    """Minimum fixed cost per pricable-edge count over simple paths."""
    f = {}
    for path in all_paths(inst):
        k = sum(1 for i in path if inst.edges[i].pricable)
        c = sum((inst.edges[i].cost for i in path), Fraction(0))
        f[k] = min(f.get(k, c), c)
    return f


def brute_uniform_revenue(inst, q):
    best = brute_consumer(inst, inst.uniform(q))
    return best[1]


def conflict_pairs(lc):
    """Re-scan every branch pair; returns {(i, pair_i, j, pair_j): j - i - 1}."""
    out = {}
    for i, ei in enumerate(lc.edges, start=1):
        for j, ej in enumerate(lc.edges, start=1):
            if j <= i:
                continue
            for pi, pj in product(ei.relation, ej.relation):
                clash_v = ei.v == ej.v and pi[0] != pj[0]
                clash_w = ei.w == ej.w and pi[1] != pj[1]
                if clash_v or clash_w:
                    out[(i, pi, j, pj)] = j - i - 1
    return out
