"""Shortest-path routing over legitimate nodes plus per-hop power allocation.

Both routing objectives reduce to minimizing the total hop length, so one
distance-vector computation serves both; the algorithms differ only in the
power allocation applied to the chosen path.

The distance-vector computation is a synchronous, centralized emulation of
distributed Bellman-Ford: every round each node updates its estimate from
its neighbors' previous-round vectors only.  Ties in total length are broken
by the lexicographically smallest node-id sequence, which makes routes
deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .allocation import PowerAllocation, solve_qo_sop, solve_so_cop
from .geometry import Scenario
from .params import ParameterError, PathSpec

__all__ = [
    "UnreachableError",
    "LinkGraph",
    "RouteResult",
    "build_graph",
    "shortest_path",
    "default_endpoints",
    "route_so_cop",
    "route_qo_sop",
]


class UnreachableError(RuntimeError):
    """No path exists between the requested source and destination."""


@dataclass(frozen=True)
class LinkGraph:
    """Undirected geometric graph: nodes with coordinates, edges within range."""

    coords: tuple
    neighbors: tuple  # per node: tuple of (neighbor id, distance)
    max_range: float

    @property
    def n_nodes(self) -> int:
        return len(self.coords)

    def edge_weight(self, u: int, v: int) -> float:
        for w, d in self.neighbors[u]:
            if w == v:
                return d
        raise KeyError(f"no edge between {u} and {v}")


def build_graph(scenario: Scenario, max_range: float) -> LinkGraph:
    """Connect every pair of legitimate nodes within ``max_range`` (inclusive).

    Edge weights are exact Euclidean distances; coincident nodes are not
    connected (a zero-length hop is not a transmission).  Disconnected
    graphs are legal outputs.
    """
    if max_range <= 0:
        raise ParameterError(f"max_range must be positive, got {max_range}")
    coords = tuple((float(x), float(y)) for x, y in scenario.legit_nodes)
    n = len(coords)
    neighbors = [[] for _ in range(n)]
    for u in range(n):
        xu, yu = coords[u]
        for v in range(u + 1, n):
            d = math.hypot(coords[v][0] - xu, coords[v][1] - yu)
            if 0.0 < d <= max_range:
                neighbors[u].append((v, d))
                neighbors[v].append((u, d))
    return LinkGraph(coords, tuple(tuple(adj) for adj in neighbors), max_range)


def shortest_path(graph: LinkGraph, src: int, dst: int) -> tuple:
    """Minimum-total-length node sequence from src to dst.

    Synchronous distance-vector relaxation; converges in at most n-1 rounds
    since all weights are positive.  Raises :class:`UnreachableError` when no
    path exists.
    """
    n = graph.n_nodes
    if not (0 <= src < n and 0 <= dst < n):
        raise ParameterError("src and dst must be valid node ids")
    if src == dst:
        raise ParameterError("src and dst must differ")
    # Per node: (distance from src, node sequence); lexicographic comparison
    # on the pair implements both the metric and the tie-break.
    infinity = (math.inf, ())
    best = [infinity] * n
    best[src] = (0.0, (src,))
    for _ in range(n - 1):
        proposed = list(best)
        changed = False
        for v in range(n):
            for u, w in graph.neighbors[v]:
                du, path_u = best[u]
                if not path_u:
                    continue
                candidate = (du + w, path_u + (v,))
                if candidate < proposed[v]:
                    proposed[v] = candidate
                    changed = True
        best = proposed
        if not changed:
            break
    if not best[dst][1]:
        raise UnreachableError(f"node {dst} is not reachable from node {src}")
    return best[dst][1]


def default_endpoints(scenario: Scenario) -> tuple:
    """Source nearest the lower-left corner, destination nearest the upper-right."""
    coords = scenario.legit_nodes.coords
    if len(coords) < 2:
        raise ParameterError("scenario needs at least two legitimate nodes")
    d_ll = (coords[:, 0] - 0.0) ** 2 + (coords[:, 1] - 0.0) ** 2
    d_ur = (coords[:, 0] - scenario.region.width) ** 2 + (
        coords[:, 1] - scenario.region.height
    ) ** 2
    src = int(d_ll.argmin())
    dst = int(d_ur.argmin())
    if src == dst:
        # Degenerate placement; pick the farthest node as destination instead.
        dst = int(d_ll.argmax())
    return src, dst


@dataclass(frozen=True)
class RouteResult:
    """A routed path with its hop distances and optimal power allocation."""

    nodes: tuple
    hop_distances: tuple
    total_length: float
    allocation: PowerAllocation
    achieved: float  # the optimized outage value (COP for SO-COP, SOP for QO-SOP)


def _route(scenario, max_range, params, beta, solver, src, dst):
    graph = build_graph(scenario, max_range)
    if src is None or dst is None:
        auto_src, auto_dst = default_endpoints(scenario)
        src = auto_src if src is None else src
        dst = auto_dst if dst is None else dst
    nodes = shortest_path(graph, src, dst)
    distances = tuple(
        graph.edge_weight(nodes[i], nodes[i + 1]) for i in range(len(nodes) - 1)
    )
    path = PathSpec.from_distances(distances)
    allocation = solver(path, params, beta)
    achieved = (
        allocation.achieved_cop if allocation.objective_kind == "SO-COP" else allocation.achieved_sop
    )
    return RouteResult(nodes, distances, path.total_length, allocation, achieved)


def route_so_cop(scenario, max_range, params, beta_so, src=None, dst=None) -> RouteResult:
    """Shortest path, then the secrecy-constrained power allocation on it."""
    return _route(scenario, max_range, params, beta_so, solve_so_cop, src, dst)


def route_qo_sop(scenario, max_range, params, beta_co, src=None, dst=None) -> RouteResult:
    """Shortest path, then the QoS-constrained power allocation on it."""
    return _route(scenario, max_range, params, beta_co, solve_qo_sop, src, dst)
