import itertools
import math
import random

import pytest

from plsroute.geometry import PointSet, Region, Scenario
from plsroute.params import ParameterError, SystemParams
from plsroute.routing import (
    UnreachableError,
    build_graph,
    default_endpoints,
    route_qo_sop,
    route_so_cop,
    shortest_path,
)

PARAMS = SystemParams(1e-3, 1e-4, 1.0, 1.0, 1.0, 4.0)


def scenario_from_nodes(nodes, region=Region(20.0, 20.0)):
    return Scenario(region, PointSet(nodes), PointSet.empty(), PointSet.empty(), seed=0)


def brute_force_shortest(graph, src, dst):
    """Exhaustive simple-path search with the same (length, sequence)
    lexicographic order; prunes branches that cannot beat the incumbent."""
    best = (math.inf, ())

    def extend(node, dist, path):
        nonlocal best
        if dist > best[0]:
            return
        if node == dst:
            candidate = (dist, path)
            if candidate < best:
                best = candidate
            return
        for nbr, w in graph.neighbors[node]:
            if nbr not in path:
                extend(nbr, dist + w, path + (nbr,))

    extend(src, 0.0, (src,))
    if not best[1]:
        raise UnreachableError(f"{dst} unreachable from {src}")
    return best[1]


class TestBuildGraph:
    def test_range_boundary_inclusive(self):
        sc = scenario_from_nodes([(0.0, 0.0), (8.0, 0.0)])
        assert build_graph(sc, 8.0).neighbors[0] == ((1, 8.0),)
        sc = scenario_from_nodes([(0.0, 0.0), (8.0001, 0.0)])
        assert build_graph(sc, 8.0).neighbors[0] == ()

    def test_coincident_nodes_not_connected(self):
        sc = scenario_from_nodes([(1.0, 1.0), (1.0, 1.0)])
        assert build_graph(sc, 8.0).neighbors[0] == ()

    def test_invalid_range(self):
        with pytest.raises(ParameterError):
            build_graph(scenario_from_nodes([(0.0, 0.0), (1.0, 0.0)]), 0.0)

    def test_edge_weight_lookup(self):
        sc = scenario_from_nodes([(0.0, 0.0), (3.0, 4.0)])
        g = build_graph(sc, 8.0)
        assert g.edge_weight(0, 1) == 5.0
        with pytest.raises(KeyError):
            g.edge_weight(0, 0)


class TestShortestPath:
    def test_relay_used_when_direct_edge_out_of_range(self):
        sc = scenario_from_nodes([(0.0, 0.0), (4.0, 0.0), (4.0, 3.0)])
        g = build_graph(sc, 4.5)  # 0-2 distance 5 exceeds the range
        assert shortest_path(g, 0, 2) == (0, 1, 2)

    def test_lexicographic_tie_break(self):
        # Two equal-length routes 0-1-3 and 0-2-3; the smaller middle id wins.
        sc = scenario_from_nodes([(0.0, 5.0), (3.0, 9.0), (3.0, 1.0), (6.0, 5.0)])
        g = build_graph(sc, 5.5)  # excludes the direct 0-3 edge (length 6)
        assert shortest_path(g, 0, 3) == (0, 1, 3)

    def test_unreachable(self):
        sc = scenario_from_nodes([(0.0, 0.0), (19.0, 19.0)])
        with pytest.raises(UnreachableError):
            shortest_path(build_graph(sc, 5.0), 0, 1)

    def test_argument_validation(self):
        g = build_graph(scenario_from_nodes([(0.0, 0.0), (1.0, 0.0)]), 8.0)
        with pytest.raises(ParameterError):
            shortest_path(g, 0, 0)
        with pytest.raises(ParameterError):
            shortest_path(g, 0, 5)

    def test_matches_brute_force_enumeration(self):
        """40 random geometric graphs against exhaustive enumeration
        (the acceptance suite runs a larger batch)."""
        rng = random.Random(2024)
        checked = 0
        while checked < 40:
            n = rng.randint(4, 9)
            nodes = [(rng.uniform(0, 20), rng.uniform(0, 20)) for _ in range(n)]
            g = build_graph(scenario_from_nodes(nodes), max_range=9.0)
            src, dst = 0, n - 1
            try:
                want = brute_force_shortest(g, src, dst)
            except UnreachableError:
                with pytest.raises(UnreachableError):
                    shortest_path(g, src, dst)
                continue
            got = shortest_path(g, src, dst)
            assert got == want
            checked += 1

    def test_prefers_shorter_total_length_over_fewer_hops(self):
        # A straight 4-hop chain (total 10) beats a bent 3-hop route (11.1).
        nodes = [
            (0.0, 3.0), (10.0, 3.0),             # src, dst
            (2.5, 3.0), (5.0, 3.0), (7.5, 3.0),  # straight chain relays
            (3.5, 5.0), (7.0, 5.0),              # bent-route relays
        ]
        g = build_graph(scenario_from_nodes(nodes), max_range=4.2)
        path = shortest_path(g, 0, 1)
        assert path == (0, 2, 3, 4, 1)
        total = sum(g.edge_weight(path[i], path[i + 1]) for i in range(len(path) - 1))
        bent = sum(g.edge_weight(u, v) for u, v in [(0, 5), (5, 6), (6, 1)])
        assert len(path) - 1 > 3 and total < bent


class TestDefaultEndpoints:
    def test_nearest_corners(self):
        sc = scenario_from_nodes([(1.0, 1.0), (10.0, 10.0), (19.0, 19.0)])
        assert default_endpoints(sc) == (0, 2)

    def test_degenerate_single_cluster(self):
        sc = scenario_from_nodes([(10.0, 10.0), (10.5, 10.0)])
        src, dst = default_endpoints(sc)
        assert src != dst

    def test_needs_two_nodes(self):
        with pytest.raises(ParameterError):
            default_endpoints(scenario_from_nodes([(1.0, 1.0)]))


class TestRouteObjectives:
    def test_both_objectives_pick_the_same_path(self):
        rng = random.Random(7)
        found = 0
        while found < 10:
            nodes = [(rng.uniform(0, 20), rng.uniform(0, 20)) for _ in range(12)]
            sc = scenario_from_nodes(nodes)
            try:
                so = route_so_cop(sc, 8.0, PARAMS, 0.4)
                qo = route_qo_sop(sc, 8.0, PARAMS, 0.4)
            except UnreachableError:
                continue
            assert so.nodes == qo.nodes
            assert so.total_length == pytest.approx(qo.total_length)
            found += 1

    def test_route_result_consistency(self):
        sc = scenario_from_nodes([(1.0, 1.0), (6.0, 4.0), (12.0, 8.0), (18.0, 12.0), (19.0, 18.0)])
        res = route_so_cop(sc, 8.0, PARAMS, 0.4)
        assert res.total_length == pytest.approx(math.fsum(res.hop_distances))
        assert len(res.allocation.powers) == len(res.hop_distances)
        assert res.achieved == res.allocation.achieved_cop
        qo = route_qo_sop(sc, 8.0, PARAMS, 0.4)
        assert qo.achieved == qo.allocation.achieved_sop

    def test_explicit_endpoints(self):
        sc = scenario_from_nodes([(1.0, 1.0), (6.0, 1.0), (11.0, 1.0)])
        res = route_so_cop(sc, 8.0, PARAMS, 0.4, src=2, dst=0)
        assert res.nodes[0] == 2 and res.nodes[-1] == 0

    def test_unreachable_propagates(self):
        sc = scenario_from_nodes([(0.0, 0.0), (19.0, 19.0)])
        with pytest.raises(UnreachableError):
            route_so_cop(sc, 3.0, PARAMS, 0.4)
