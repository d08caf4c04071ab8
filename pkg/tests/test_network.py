"""Topology, distance, and route-cost behavior."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import ringhub as rh

# frozen expectations, computed by hand from the half-up rounding rule
KNOWN_INTERCHANGES = {
    (8, 4): (0, 2, 4, 6),
    (8, 8): (0, 1, 2, 3, 4, 5, 6, 7),
    (100, 3): (0, 33, 67),
    (100, 4): (0, 25, 50, 75),
    (10, 3): (0, 3, 7),
    (12, 5): (0, 2, 5, 7, 10),
    (8, 3): (0, 3, 5),
    (9, 2): (0, 5),
}

MEAN_RING_DISTANCE_100 = Fraction(2500, 99)  # exact mean of d(O,D), uniform D != O


class TestConfig:
    def test_defaults(self):
        cfg = rh.NetworkConfig()
        assert (cfg.N, cfg.hub_links, cfg.L) == (100, 4, 80)
        assert cfg.alpha == Fraction(1, 2)
        assert cfg.beta == Fraction(3, 2)

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"N": 3},
            {"hub_links": 1},
            {"hub_links": 101},
            {"L": 0},
            {"L": 101},
            {"alpha": 0},
            {"alpha": Fraction(3, 2), "beta": Fraction(1, 2)},
            {"alpha": Fraction(1, 2), "beta": Fraction(1, 2)},
        ],
    )
    def test_rejects_bad_values(self, kwargs):
        with pytest.raises(ValueError):
            rh.NetworkConfig(**kwargs)

    def test_coerces_rationals(self):
        cfg = rh.NetworkConfig(alpha="1/4", beta="5/4")
        assert cfg.alpha == Fraction(1, 4)
        assert cfg.beta == Fraction(5, 4)

    def test_od_pair_requires_distinct_nodes(self):
        with pytest.raises(ValueError):
            rh.ODPair(3, 3)


class TestInterchanges:
    @pytest.mark.parametrize("key", sorted(KNOWN_INTERCHANGES))
    def test_known_placements(self, key):
        n, lam = key
        assert rh.interchange_positions(n, lam) == KNOWN_INTERCHANGES[key]

    def test_build_network_is_deterministic(self):
        cfg = rh.NetworkConfig(N=97, hub_links=13)
        assert rh.build_network(cfg).interchanges == rh.build_network(cfg).interchanges

    @given(
        st.integers(min_value=4, max_value=80).flatmap(
            lambda n: st.tuples(st.just(n), st.integers(min_value=2, max_value=n))
        )
    )
    @settings(max_examples=120, deadline=None)
    def test_count_and_uniqueness(self, pair):
        n, lam = pair
        pos = rh.interchange_positions(n, lam)
        assert len(pos) == lam
        assert len(set(pos)) == lam
        assert all(0 <= p < n for p in pos)
        assert pos == tuple(sorted(pos))

    def test_even_spacing_when_divisible(self):
        for n, lam in [(100, 4), (100, 5), (100, 10), (60, 6), (8, 2)]:
            pos = rh.interchange_positions(n, lam)
            gaps = {
                (pos[(i + 1) % lam] - pos[i]) % n for i in range(lam)
            }
            assert gaps == {n // lam}


class TestRingDistance:
    @pytest.mark.parametrize(
        "i,j,n,expected", [(0, 3, 8, 3), (0, 6, 8, 2), (5, 5, 8, 0), (0, 50, 100, 50)]
    )
    def test_examples(self, i, j, n, expected):
        assert rh.ring_distance(i, j, n) == expected

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            rh.ring_distance(0, 8, 8)

    @given(
        st.integers(min_value=4, max_value=200).flatmap(
            lambda n: st.tuples(*([st.just(n)] + [st.integers(0, n - 1)] * 3))
        )
    )
    @settings(max_examples=200, deadline=None)
    def test_metric_axioms(self, quad):
        n, a, b, c = quad
        d = rh.ring_distance
        assert d(a, b, n) == d(b, a, n)
        assert (d(a, b, n) == 0) == (a == b)
        assert d(a, c, n) <= d(a, b, n) + d(b, c, n)
        assert d(a, b, n) <= n // 2


class TestDestinations:
    def test_origin_is_agent_index_and_never_destination(self):
        net = rh.build_network(rh.NetworkConfig())
        od = rh.assign_destinations(net, np.random.default_rng(5))
        assert [pair.origin for pair in od] == list(range(100))
        assert all(pair.origin != pair.destination for pair in od)

    def test_same_seed_same_assignment(self):
        net = rh.build_network(rh.NetworkConfig(N=31, hub_links=5, L=20))
        a = rh.assign_destinations(net, np.random.default_rng(9))
        b = rh.assign_destinations(net, np.random.default_rng(9))
        assert a == b

    def test_mean_distance_matches_uniform_expectation(self):
        net = rh.build_network(rh.NetworkConfig())
        rng = np.random.default_rng(123)
        samples = []
        for _ in range(60):
            for od in rh.assign_destinations(net, rng):
                samples.append(rh.outside_cost(od, net.N))
        samples = np.asarray(samples, dtype=float)
        se = samples.std(ddof=1) / np.sqrt(len(samples))
        assert abs(samples.mean() - float(MEAN_RING_DISTANCE_100)) < 4 * se


def brute_force_route(od: rh.ODPair, net: rh.Network, alpha: Fraction) -> tuple:
    """Independent exhaustive scan over ordered interchange pairs."""
    best = None
    for h_in in net.interchanges:
        for h_out in net.interchanges:
            if h_in == h_out:
                continue
            d_access = rh.ring_distance(od.origin, h_in, net.N) + rh.ring_distance(
                h_out, od.destination, net.N
            )
            d_hub = rh.ring_distance(h_in, h_out, net.N)
            cost = d_access + alpha * d_hub
            key = (cost, h_in, h_out)
            if best is None or key < best:
                best = key
    return best


class TestRoutes:
    def test_outside_cost_is_ring_distance(self):
        assert rh.outside_cost(rh.ODPair(0, 18), 100) == 18
        assert rh.outside_cost(rh.ODPair(4, 5), 100) == 1

    def test_inside_cost_examples(self):
        route = rh.InsideRoute(h_in=0, h_out=25, d_access=5, d_hub=13)
        assert rh.inside_cost(route, congested=False) == Fraction(23, 2)
        assert float(rh.inside_cost(route, congested=False)) == 11.5
        assert rh.inside_cost(route, congested=True) == Fraction(49, 2)
        near = rh.InsideRoute(h_in=0, h_out=2, d_access=0, d_hub=2)
        assert rh.inside_cost(near, congested=False) == 1

    def test_congested_exceeds_uncongested_by_gap_times_hub_leg(self):
        route = rh.InsideRoute(h_in=0, h_out=25, d_access=7, d_hub=9)
        cfg = rh.NetworkConfig()
        gap = rh.inside_cost(route, True) - rh.inside_cost(route, False)
        assert gap == (cfg.beta - cfg.alpha) * route.d_hub

    def test_route_validation(self):
        with pytest.raises(ValueError):
            rh.InsideRoute(h_in=3, h_out=3, d_access=0, d_hub=1)
        with pytest.raises(ValueError):
            rh.InsideRoute(h_in=0, h_out=1, d_access=0, d_hub=0)

    @given(
        st.integers(min_value=4, max_value=24).flatmap(
            lambda n: st.tuples(
                st.just(n),
                st.integers(2, n),
                st.integers(0, n - 1),
                st.integers(0, n - 1),
            )
        )
    )
    @settings(max_examples=150, deadline=None)
    def test_best_route_matches_exhaustive_scan(self, args):
        n, lam, o, d = args
        if o == d:
            d = (d + 1) % n
        net = rh.build_network(rh.NetworkConfig(N=n, hub_links=lam, L=1))
        od = rh.ODPair(o, d)
        route = rh.best_inside_route(od, net)
        cost, h_in, h_out = brute_force_route(od, net, net.config.alpha)
        assert rh.inside_cost(route, False) == cost
        assert (route.h_in, route.h_out) == (h_in, h_out)

    def test_all_interchanges_gives_zero_access_entry(self):
        net = rh.build_network(rh.NetworkConfig(N=12, hub_links=12, L=4))
        route = rh.best_inside_route(rh.ODPair(7, 1), net)
        assert rh.ring_distance(7, route.h_in, 12) == 0

    def test_more_interchanges_never_worse(self):
        # nested placements: {0,50} within {0,25,50,75} within the lam=8 set
        cfgs = [rh.NetworkConfig(hub_links=lam) for lam in (2, 4, 8)]
        nets = [rh.build_network(c) for c in cfgs]
        for a, b in zip(nets, nets[1:]):
            assert set(a.interchanges) <= set(b.interchanges)
        rng = np.random.default_rng(2)
        od_pairs = rh.assign_destinations(nets[0], rng)
        for od in od_pairs[:40]:
            costs = [
                rh.inside_cost(rh.best_inside_route(od, net), False) for net in nets
            ]
            assert costs[0] >= costs[1] >= costs[2]


class TestRouteTable:
    @pytest.mark.parametrize(
        "n,lam", [(8, 2), (12, 5), (20, 7), (30, 30), (25, 2), (16, 3)]
    )
    def test_matches_scalar_ops_on_all_pairs(self, n, lam):
        net = rh.build_network(rh.NetworkConfig(N=n, hub_links=lam, L=1))
        d_out, d_access, d_hub = rh.route_table(net)
        for o in range(n):
            for d in range(n):
                if o == d:
                    continue
                od = rh.ODPair(o, d)
                assert d_out[o, d] == rh.outside_cost(od, n)
                route = rh.best_inside_route(od, net)
                assert d_access[o, d] == route.d_access
                assert d_hub[o, d] == route.d_hub

    def test_respects_alpha_pricing(self):
        # a large alpha pushes routes toward shorter hub crossings
        cfg = rh.NetworkConfig(N=20, hub_links=5, L=1, alpha=Fraction(9, 10), beta=Fraction(11, 10))
        net = rh.build_network(cfg)
        _, d_access, d_hub = rh.route_table(net)
        for o in range(20):
            for d in range(20):
                if o == d:
                    continue
                route = rh.best_inside_route(rh.ODPair(o, d), net)
                priced = d_access[o, d] + cfg.alpha * d_hub[o, d]
                assert priced == rh.inside_cost(route, False, cfg.alpha, cfg.beta)
