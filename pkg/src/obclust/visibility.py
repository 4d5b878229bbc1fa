"""Visibility graph over obstacle vertices and obstructed shortest paths.

The obstructed distance between two points is the length of the shortest
Euclidean path that never enters an obstacle interior.  Mutually visible
points are connected directly; otherwise the path bends only at obstacle
vertices, so it suffices to run Dijkstra over the obstacle-vertex
visibility graph extended with the two query points.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Sequence

from .geometry import (
    Point,
    Polygon,
    euclidean,
    is_visible,
    point_strictly_in_polygon,
)

UNREACHABLE = math.inf


@dataclass
class VisibilityGraph:
    """Undirected graph on obstacle vertices with Euclidean edge lengths."""

    nodes: list[Point]
    node_obstacle: list[int]  # owning obstacle index per node
    adjacency: list[list[tuple[int, float]]]

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    def edge_set(self) -> set[tuple[int, int]]:
        return {
            (i, j) for i, nbrs in enumerate(self.adjacency) for j, _ in nbrs if i < j
        }


def build_visibility_graph(obstacles: Sequence[Polygon]) -> VisibilityGraph:
    """Pairwise construction: an edge per mutually visible vertex pair.

    Vertices shared by several obstacles stay distinct nodes.
    """
    nodes: list[Point] = []
    node_obstacle: list[int] = []
    for oi, obstacle in enumerate(obstacles):
        for v in obstacle.vertices:
            nodes.append(v)
            node_obstacle.append(oi)

    adjacency: list[list[tuple[int, float]]] = [[] for _ in nodes]
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            if is_visible(nodes[i], nodes[j], obstacles):
                d = euclidean(nodes[i], nodes[j])
                adjacency[i].append((j, d))
                adjacency[j].append((i, d))
    return VisibilityGraph(nodes=nodes, node_obstacle=node_obstacle, adjacency=adjacency)


def _check_endpoint(label: str, p: Point, obstacles: Sequence[Polygon]) -> None:
    for oi, obstacle in enumerate(obstacles):
        if point_strictly_in_polygon(p, obstacle):
            raise ValueError(f"{label} point {p} lies strictly inside obstacle {oi}")


def _extended_dijkstra(
    a: Point, b: Point, obstacles: Sequence[Polygon], vg: VisibilityGraph
) -> list[Point] | None:
    """Dijkstra from a to b over the visibility graph plus the two query nodes.

    Ties on path length are broken toward the lexicographically smaller
    first bend, which keeps mirror-symmetric scenes deterministic.
    """
    n = vg.n_nodes
    src, dst = n, n + 1
    points = vg.nodes + [a, b]

    extra: list[list[tuple[int, float]]] = [[], []]
    for i, node in enumerate(vg.nodes):
        if is_visible(a, node, obstacles):
            extra[0].append((i, euclidean(a, node)))
        if is_visible(node, b, obstacles):
            extra[1].append((i, euclidean(node, b)))

    def neighbors(u: int) -> list[tuple[int, float]]:
        if u == src:
            return extra[0]
        if u == dst:
            return extra[1]
        out = list(vg.adjacency[u])
        for q, qextra in ((src, extra[0]), (dst, extra[1])):
            for i, d in qextra:
                if i == u:
                    out.append((q, d))
        return out

    far = Point(math.inf, math.inf)
    dist = [math.inf] * (n + 2)
    first_bend: list[Point] = [far] * (n + 2)
    prev = [-1] * (n + 2)
    dist[src] = 0.0
    first_bend[src] = Point(-math.inf, -math.inf)
    heap: list[tuple[float, float, float, int]] = [(0.0, -math.inf, -math.inf, src)]
    while heap:
        d, fx, fy, u = heapq.heappop(heap)
        if d != dist[u] or (fx, fy) != first_bend[u]:
            continue  # stale entry
        if u == dst:
            break
        for v, w in neighbors(u):
            nd = d + w
            nfb = points[v] if u == src else first_bend[u]
            if nd < dist[v] or (nd == dist[v] and nfb < first_bend[v]):
                dist[v] = nd
                first_bend[v] = nfb
                prev[v] = u
                heapq.heappush(heap, (nd, nfb.x, nfb.y, v))

    if math.isinf(dist[dst]):
        return None
    path = []
    u = dst
    while u != -1:
        path.append(points[u])
        u = prev[u]
    path.reverse()
    return path


def _polyline_length(path: Sequence[Point]) -> float:
    return math.fsum(euclidean(p, q) for p, q in zip(path, path[1:]))


def shortest_obstructed_path(
    a: Point,
    b: Point,
    obstacles: Sequence[Polygon],
    vg: VisibilityGraph | None = None,
) -> list[Point] | None:
    """Vertex sequence of the shortest obstacle-free path, or None if cut off.

    Every vertex other than the endpoints is an obstacle vertex.
    """
    _check_endpoint("start", a, obstacles)
    _check_endpoint("end", b, obstacles)
    if a == b:
        return [a]
    if is_visible(a, b, obstacles):
        return [a, b]
    if vg is None:
        vg = build_visibility_graph(obstacles)
    return _extended_dijkstra(a, b, obstacles, vg)


def obstructed_distance(
    a: Point,
    b: Point,
    obstacles: Sequence[Polygon],
    vg: VisibilityGraph | None = None,
) -> float:
    """Length of the shortest obstacle-free path; UNREACHABLE if none exists.

    The value is the exactly-rounded sum of the path's edge lengths, so it
    is identical whichever endpoint the query starts from.
    """
    _check_endpoint("start", a, obstacles)
    _check_endpoint("end", b, obstacles)
    if is_visible(a, b, obstacles):
        return euclidean(a, b)
    if vg is None:
        vg = build_visibility_graph(obstacles)
    path = _extended_dijkstra(a, b, obstacles, vg)
    if path is None:
        return UNREACHABLE
    return _polyline_length(path)
