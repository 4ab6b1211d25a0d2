"""
The follower's purchase on a small network
==========================================

One fixed route of cost 4 competes with two priced routes. We watch the
follower switch paths as the leader moves a single price around.
"""

from fractions import Fraction

from stacksp import INF, StackInstance, consumer_best_response
from stacksp.solvers import best_single_price, exact_optimal_pricing, pricable_profile

# nodes: 0 = s, 1 = a, 2 = b, 3 = t
inst = StackInstance.build(
    4,
    [
        (0, 3, "fixed", 4),
        (0, 1, "pricable", 0),
        (1, 3, "fixed", 1),
        (0, 2, "pricable", 0),
        (2, 3, "pricable", 0),
    ],
    0,
    3,
)

# every pricable edge at 1: the route through a costs 2, the route through b costs 2 as well,
# but the b route pays the leader twice, so the optimistic follower takes it
res = consumer_best_response(inst, inst.uniform(1))
print("uniform 1:", res.to_dict())

# close the b route and the follower goes through a
res = consumer_best_response(inst, {1: Fraction(3, 2), 3: INF, 4: INF})
print("b closed: ", res.to_dict())

###############################################################################
# Profile f[k]: cheapest fixed cost of a route with exactly k priced edges.
# The best single price sits on the lower envelope of the lines f[k] + k*q.

print("profile f =", pricable_profile(inst))
q, single = best_single_price(inst)
print("best single price q* =", q, "revenue", single.revenue)

exact = exact_optimal_pricing(inst)
print("exact optimum revenue", exact.revenue, "pricing", exact.to_dict()["pricing"])
