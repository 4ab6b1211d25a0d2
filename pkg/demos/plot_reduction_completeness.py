"""
From label cover to a chain of gadgets
======================================

A planted label cover instance is compiled into a pricing network. Pricing
consistent branches at 2 earns exactly twice the number of satisfied edges.
"""

from stacksp import consumer_best_response, generate_planted, reduce, satisfied_count
from stacksp.reduction import completeness_pricing

lc, planted = generate_planted(3, 3, 3, 8, decoys_per_edge=1, corrupt_fraction=0.0, seed=11)
inst, rmap = reduce(lc)
print(f"label cover: m={lc.m}, k={lc.k}; network: {inst.node_count} nodes, {len(inst.edges)} edges")
print("shortcuts:", len(rmap.shortcuts))

res = consumer_best_response(inst, completeness_pricing(rmap, planted))
print("planted labelling satisfies", satisfied_count(lc, planted), "-> revenue", res.revenue)

###############################################################################
# Corrupt half the edges: the planted labelling now satisfies fewer of them
# and the revenue drops in step.

lc_bad, planted_bad = generate_planted(3, 3, 3, 8, decoys_per_edge=1, corrupt_fraction=0.5, seed=11)
inst_bad, rmap_bad = reduce(lc_bad)
res = consumer_best_response(inst_bad, completeness_pricing(rmap_bad, planted_bad))
print("corrupted: satisfies", satisfied_count(lc_bad, planted_bad), "-> revenue", res.revenue)
