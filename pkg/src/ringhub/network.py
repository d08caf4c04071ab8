"""Ring-and-hub road networks: topology, peripheral distances, route costs.

The network is a cycle of N peripheral nodes plus one central hub connected
to ``hub_links`` of them (the interchanges). Every agent travels from an
origin node to a destination node either along the ring (outside route) or
through the hub (inside route). The hub crossing is priced by ``alpha``
when uncongested and ``beta`` when congested; both are exact rationals so
that cost comparisons never suffer floating-point ties.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "NetworkConfig",
    "Network",
    "ODPair",
    "InsideRoute",
    "build_network",
    "interchange_positions",
    "ring_distance",
    "assign_destinations",
    "outside_cost",
    "best_inside_route",
    "inside_cost",
    "route_table",
]


def _as_fraction(value, field: str) -> Fraction:
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"{field} is not a rational number: {value!r}") from exc


@dataclass(frozen=True)
class NetworkConfig:
    """Static parameters of a ring-and-hub network.

    N: number of peripheral nodes (one agent lives on each).
    hub_links: number of interchanges connected to the hub.
    L: hub capacity; the hub is congested when more than L agents use it.
    alpha: uncongested hub-crossing coefficient.
    beta: congested hub-crossing coefficient.
    """

    N: int = 100
    hub_links: int = 4
    L: int = 80
    alpha: Fraction = Fraction(1, 2)
    beta: Fraction = Fraction(3, 2)

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _as_fraction(self.alpha, "alpha"))
        object.__setattr__(self, "beta", _as_fraction(self.beta, "beta"))
        if not isinstance(self.N, (int, np.integer)) or self.N < 4:
            raise ValueError(f"N must be an integer >= 4, got {self.N!r}")
        if not 2 <= self.hub_links <= self.N:
            raise ValueError(
                f"hub_links must be in [2, N={self.N}], got {self.hub_links!r}"
            )
        if not 1 <= self.L <= self.N:
            raise ValueError(f"L must be in [1, N={self.N}], got {self.L!r}")
        if not 0 < self.alpha < self.beta:
            raise ValueError(
                f"need 0 < alpha < beta, got alpha={self.alpha}, beta={self.beta}"
            )


@dataclass(frozen=True)
class Network:
    """A built topology: the config plus the sorted interchange set."""

    config: NetworkConfig
    interchanges: tuple[int, ...]

    @property
    def N(self) -> int:
        return self.config.N


@dataclass(frozen=True)
class ODPair:
    """An agent's fixed origin and destination nodes."""

    origin: int
    destination: int

    def __post_init__(self) -> None:
        if self.origin == self.destination:
            raise ValueError("origin and destination must differ")


@dataclass(frozen=True)
class InsideRoute:
    """Least-cost hub route: entry interchange, exit interchange, leg lengths.

    d_access is d(O, h_in) + d(h_out, D); d_hub is d(h_in, h_out). The hub
    crossing is the only leg whose price depends on congestion.
    """

    h_in: int
    h_out: int
    d_access: int
    d_hub: int

    def __post_init__(self) -> None:
        if self.h_in == self.h_out:
            raise ValueError("inside route must use two distinct interchanges")
        if self.d_access < 0 or self.d_hub < 1:
            raise ValueError("leg lengths out of range")


def interchange_positions(N: int, hub_links: int) -> tuple[int, ...]:
    """Evenly spaced interchange nodes: round(i*N/hub_links) mod N, half up.

    Rounding is done in integer arithmetic. If rounding ever produced a
    duplicate, the gap is filled with the nearest unused nodes so the count
    always equals hub_links; for 2 <= hub_links <= N the formula spaces
    positions at least one node apart, so the fill path is a safety net.
    """
    if not 2 <= hub_links <= N:
        raise ValueError(f"hub_links must be in [2, N={N}], got {hub_links!r}")
    positions: list[int] = []
    seen: set[int] = set()
    for i in range(hub_links):
        p = ((2 * i * N + hub_links) // (2 * hub_links)) % N
        if p not in seen:
            seen.add(p)
            positions.append(p)
    while len(positions) < hub_links:
        best = min(
            (q for q in range(N) if q not in seen),
            key=lambda q: min(min(abs(q - p), N - abs(q - p)) for p in positions),
        )
        seen.add(best)
        positions.append(best)
    return tuple(sorted(positions))


def build_network(cfg: NetworkConfig) -> Network:
    """Place the interchanges for cfg. Deterministic; no RNG involved."""
    return Network(config=cfg, interchanges=interchange_positions(cfg.N, cfg.hub_links))


def ring_distance(i: int, j: int, N: int) -> int:
    """Shortest path length between nodes i and j along the ring."""
    if not (0 <= i < N and 0 <= j < N):
        raise IndexError(f"node index out of range for N={N}: ({i}, {j})")
    d = abs(i - j)
    return min(d, N - d)


def assign_destinations(net: Network, rng: np.random.Generator) -> list[ODPair]:
    """Draw one destination per agent, uniform over the other N-1 nodes.

    Agent n's origin is node n. The whole assignment comes from a single
    generator call so replications consume identical stream lengths.
    """
    n = net.N
    draws = rng.integers(0, n - 1, size=n)
    dests = draws + (draws >= np.arange(n))
    return [ODPair(int(o), int(d)) for o, d in enumerate(dests)]


def outside_cost(od: ODPair, N: int) -> int:
    """Ring-route cost: the peripheral distance from origin to destination."""
    return ring_distance(od.origin, od.destination, N)


def best_inside_route(od: ODPair, net: Network, alpha: Fraction | None = None) -> InsideRoute:
    """Cheapest hub route for od under the uncongested price alpha.

    Scans all ordered pairs of distinct interchanges; ties go to the
    lexicographically smallest (h_in, h_out). The route is fixed for a whole
    run and only re-priced when the hub congests.
    """
    if alpha is None:
        alpha = net.config.alpha
    alpha = _as_fraction(alpha, "alpha")
    n = net.N
    best: InsideRoute | None = None
    best_cost: Fraction | None = None
    for h_in in net.interchanges:
        d_in = ring_distance(od.origin, h_in, n)
        for h_out in net.interchanges:
            if h_out == h_in:
                continue
            d_hub = ring_distance(h_in, h_out, n)
            d_access = d_in + ring_distance(h_out, od.destination, n)
            cost = d_access + alpha * d_hub
            if best_cost is None or cost < best_cost:
                best_cost = cost
                best = InsideRoute(h_in, h_out, d_access, d_hub)
    assert best is not None  # guaranteed by hub_links >= 2
    return best


def inside_cost(
    route: InsideRoute,
    congested: bool,
    alpha: Fraction = Fraction(1, 2),
    beta: Fraction = Fraction(3, 2),
) -> Fraction:
    """Realized hub-route cost: access legs plus the priced hub crossing."""
    factor = _as_fraction(beta if congested else alpha, "beta" if congested else "alpha")
    return route.d_access + factor * route.d_hub


def route_table(net: Network) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Vectorized route geometry for every ordered (origin, destination) pair.

    Returns (d_out, d_access, d_hub), three (N, N) int64 arrays indexed
    [origin, destination]. Rows describe the same routes best_inside_route
    picks, including its lexicographic tie-break; diagonal entries are 0 and
    carry no meaning (destinations never equal origins).

    The argmin runs on integer costs scaled by alpha's denominator, so route
    selection is exact. Two-stage minimization keeps it O(N * hub_links^2):
    first the best exit per (entry, destination), then the best entry per
    (origin, destination). np.argmin takes the first minimum, which composes
    to the lexicographic (h_in, h_out) order because interchanges are sorted.
    """
    n = net.N
    hubs = np.asarray(net.interchanges, dtype=np.int64)
    p = int(net.config.alpha.numerator)
    q = int(net.config.alpha.denominator)

    idx = np.arange(n, dtype=np.int64)
    diff = np.abs(idx[:, None] - idx[None, :])
    d_all = np.minimum(diff, n - diff)  # (N, N) ring distances

    d_hub_pairs = d_all[np.ix_(hubs, hubs)]  # (lam, lam)
    d_exit = d_all[hubs]  # (lam, N): d(h_out, D)

    # stage 1: cheapest exit for each (entry a, destination), price q*d + p*hub
    cand = p * d_hub_pairs[:, :, None] + q * d_exit[None, :, :]  # (a, b, D)
    lam = len(hubs)
    cand[np.arange(lam), np.arange(lam), :] = np.iinfo(np.int64).max
    b_star = np.argmin(cand, axis=1)  # (a, D)
    s1 = np.take_along_axis(cand, b_star[:, None, :], axis=1)[:, 0, :]  # (a, D)

    # stage 2: cheapest entry for each (origin, destination)
    d_entry = d_all[:, hubs]  # (N, lam): d(O, h_in)
    total = q * d_entry[:, :, None] + s1[None, :, :]  # (O, a, D)
    a_star = np.argmin(total, axis=1)  # (O, D)

    dest_idx = np.arange(n)[None, :].repeat(n, axis=0)
    h_in = hubs[a_star]
    h_out = hubs[b_star[a_star, dest_idx]]
    d_hub = d_all[h_in, h_out]
    d_access = d_all[idx[:, None], h_in] + d_all[h_out, dest_idx]

    np.fill_diagonal(d_access, 0)
    np.fill_diagonal(d_hub, 0)
    return d_all.copy(), d_access, d_hub
