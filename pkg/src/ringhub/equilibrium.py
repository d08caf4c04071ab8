"""Nash-equilibrium baseline for the route-choice game.

An agent is a potential hub user when its uncongested inside route strictly
beats its outside route (advantage l > 0). In equilibrium the hub carries at
most its capacity L, is therefore never congested, and only potential users
enter. The closed form below evaluates the two extreme equilibria (the
cheapest and the dearest allocation of hub slots); a brute-force enumerator
over small instances serves as its oracle.

All arithmetic is exact: advantages and costs are Fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .network import Network, ODPair, best_inside_route, inside_cost, outside_cost

__all__ = [
    "CostAdvantage",
    "NEResult",
    "cost_advantages",
    "potential_count",
    "ne_costs",
    "brute_force_ne",
]


@dataclass(frozen=True)
class CostAdvantage:
    """Agent index and its advantage l = c_out - c_in(uncongested)."""

    agent: int
    l: Fraction


@dataclass(frozen=True)
class NEResult:
    """Potential-user count and the extreme equilibrium average costs."""

    n_p: int
    c_best: Fraction
    c_worst: Fraction


def cost_advantages(
    net: Network, od_pairs: list[ODPair]
) -> tuple[list[CostAdvantage], list[int], list[Fraction]]:
    """Per-agent advantages plus the cost arrays ne_costs consumes.

    Returns (advantages, outside_costs, inside_costs_uncongested), all
    indexed by agent.
    """
    cfg = net.config
    advantages: list[CostAdvantage] = []
    outside: list[int] = []
    inside: list[Fraction] = []
    for n, od in enumerate(od_pairs):
        c_out = outside_cost(od, net.N)
        route = best_inside_route(od, net)
        c_in = inside_cost(route, congested=False, alpha=cfg.alpha, beta=cfg.beta)
        advantages.append(CostAdvantage(agent=n, l=Fraction(c_out) - c_in))
        outside.append(c_out)
        inside.append(Fraction(c_in))
    return advantages, outside, inside


def potential_count(advantages: list[CostAdvantage]) -> int:
    """Number of agents whose inside route strictly beats their outside route."""
    return sum(1 for adv in advantages if adv.l > 0)


def ne_costs(
    advantages: list[CostAdvantage],
    outside_costs: list[int | Fraction],
    inside_costs_uncongested: list[Fraction],
    L: int,
) -> NEResult:
    """Average cost of the best and worst equilibrium hub allocations.

    Agents are ranked by descending advantage, ties by agent index. The best
    allocation admits the min(n_p, L) most-advantaged potential users; the
    worst admits the L least-advantaged potential users (everyone fits when
    n_p <= L, so the two coincide). The hub stays uncongested either way.

    The allocations returned are equilibria whenever beta >= 1: the ring
    distance obeys d(O,D) <= d_access + d_hub, so joining a full hub at the
    congested price can never beat the outside route. For beta < 1 consult
    brute_force_ne instead.
    """
    n = len(advantages)
    if not (len(outside_costs) == n and len(inside_costs_uncongested) == n):
        raise ValueError(
            "inconsistent lengths: "
            f"{n} advantages, {len(outside_costs)} outside costs, "
            f"{len(inside_costs_uncongested)} inside costs"
        )
    order = sorted(advantages, key=lambda adv: (-adv.l, adv.agent))
    potential = [adv.agent for adv in order if adv.l > 0]
    n_p = len(potential)
    k = min(n_p, L)

    total_outside = sum(Fraction(c) for c in outside_costs)

    def avg_with_inside(agents: list[int]) -> Fraction:
        total = total_outside
        for a in agents:
            total += inside_costs_uncongested[a] - Fraction(outside_costs[a])
        return total / n

    c_best = avg_with_inside(potential[:k])
    c_worst = avg_with_inside(potential[n_p - k :])
    return NEResult(n_p=n_p, c_best=c_best, c_worst=c_worst)


def brute_force_ne(
    network: Network, od_pairs: list[ODPair], L: int
) -> tuple[Fraction, Fraction]:
    """Extreme equilibrium average costs by exhaustive enumeration.

    Enumerates every subset of potential agents of size min(n_p, L) as the
    hub population, keeps the subsets no agent wants to leave or join
    unilaterally, and returns the (min, max) average cost over them. Only
    feasible for small instances.
    """
    n = len(od_pairs)
    if n > 16:
        raise ValueError(f"instance too large for enumeration: N={n} > 16")
    cfg = network.config
    c_out: list[Fraction] = []
    c_in_unc: list[Fraction] = []
    c_in_con: list[Fraction] = []
    for od in od_pairs:
        route = best_inside_route(od, network)
        c_out.append(Fraction(outside_cost(od, network.N)))
        c_in_unc.append(inside_cost(route, False, cfg.alpha, cfg.beta))
        c_in_con.append(inside_cost(route, True, cfg.alpha, cfg.beta))

    potential = [a for a in range(n) if c_out[a] > c_in_unc[a]]
    k = min(len(potential), L)

    best: Fraction | None = None
    worst: Fraction | None = None
    for subset in itertools.combinations(potential, k):
        inside = set(subset)
        congested_if_joined = (k + 1) > L
        stable = True
        for a in range(n):
            if a in inside:
                if c_out[a] < c_in_unc[a]:  # leaving would pay off
                    stable = False
                    break
            else:
                joined_cost = c_in_con[a] if congested_if_joined else c_in_unc[a]
                if joined_cost < c_out[a]:  # joining would pay off
                    stable = False
                    break
        if not stable:
            continue
        total = sum(c_out[a] for a in range(n) if a not in inside)
        total += sum(c_in_unc[a] for a in inside)
        avg = total / n
        if best is None or avg < best:
            best = avg
        if worst is None or avg > worst:
            worst = avg
    if best is None or worst is None:
        raise ValueError("no equilibrium among capacity-respecting allocations")
    return best, worst
