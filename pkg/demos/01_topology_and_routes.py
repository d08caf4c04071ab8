"""Tour of the network model: rings, interchanges, and the two route types.

Every traveler starts at a ring node and heads to a random other node.
The outside option walks the ring; the inside option walks to a hub
interchange, crosses the hub at a discounted (or, when crowded, inflated)
per-edge price, and walks out to the destination. This script builds a few
networks, shows where the interchanges land, and prices both options for
sample trips.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

import ringhub as rh

# Interchanges are spread as evenly as the ring allows. When the count
# divides the ring size the spacing is exact.
for n, lam in [(12, 4), (100, 4), (100, 3), (10, 3)]:
    net = rh.build_network(rh.NetworkConfig(N=n, hub_links=lam, L=max(1, n // 2)))
    print(f"N={n:>3} hub_links={lam}: interchanges at {list(net.interchanges)}")

print()

# Price a handful of trips on the default network. The inside route is
# attractive when the hub shortcut saves more ring walking than the access
# legs cost.
net = rh.build_network(rh.NetworkConfig(N=100, hub_links=4, L=80))
alpha, beta = net.config.alpha, net.config.beta
for origin, destination in [(0, 50), (3, 52), (10, 12), (40, 90)]:
    od = rh.ODPair(origin=origin, destination=destination)
    outside = rh.outside_cost(od, net.N)
    route = rh.best_inside_route(od, net)
    quiet = rh.inside_cost(route, False, alpha, beta)
    crowded = rh.inside_cost(route, True, alpha, beta)
    print(
        f"trip {origin:>2} -> {destination:<2} outside={outside:>2} "
        f"inside via ({route.h_in},{route.h_out}): "
        f"quiet={float(quiet):.1f} crowded={float(crowded):.1f}"
    )

print()

# How many travelers would even consider the hub? Draw a random trip table
# and count the agents whose uncongested inside route beats the ring.
rng = np.random.default_rng(7)
od_pairs = rh.assign_destinations(net, rng)
advantages, outside_costs, inside_costs = rh.cost_advantages(net, od_pairs)
n_p = rh.potential_count(advantages)
print(f"potential hub users for this trip table: {n_p} of {net.N}")

# The same count as the hub thins out: fewer interchanges mean longer
# access walks, so fewer trips benefit.
for lam in (2, 4, 10, 25, 50):
    thin = rh.build_network(rh.NetworkConfig(N=100, hub_links=lam, L=80))
    pairs = rh.assign_destinations(thin, np.random.default_rng(7))
    adv, _, _ = rh.cost_advantages(thin, pairs)
    print(f"hub_links={lam:>2}: potential users={rh.potential_count(adv):>3}")

# Mean advantage of the best inside route, exact arithmetic throughout.
mean_l = sum((a.l for a in advantages), Fraction(0)) / len(advantages)
print(f"\nmean cost advantage of the hub at hub_links=4: {mean_l} = {float(mean_l):.3f}")
