"""Planar geometry primitives and predicates.

Conventions shared by every caller in this package:

* polygon vertices run counter-clockwise and the region is closed --
  a point on an edge or a vertex counts as contained;
* only polygon *interiors* block visibility: a segment may touch a
  vertex or run along an edge without counting as a crossing, so
  shortest paths are free to hug obstacle corners;
* orientation and on-boundary tests use the fixed absolute tolerance
  ``EPS``; coordinates are ordinary double-precision floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

EPS = 1e-9


class Point(NamedTuple):
    x: float
    y: float


class Segment(NamedTuple):
    a: Point
    b: Point


def euclidean(a: Point, b: Point) -> float:
    return math.hypot(b.x - a.x, b.y - a.y)


def _is_finite(p: Point) -> bool:
    return math.isfinite(p.x) and math.isfinite(p.y)


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle with strictly positive extent."""

    min: Point
    max: Point

    def __post_init__(self) -> None:
        if not (_is_finite(self.min) and _is_finite(self.max)):
            raise ValueError("rect corners must be finite")
        if not (self.min.x < self.max.x and self.min.y < self.max.y):
            raise ValueError(f"degenerate rect {self.min} .. {self.max}")

    @property
    def width(self) -> float:
        return self.max.x - self.min.x

    @property
    def height(self) -> float:
        return self.max.y - self.min.y

    def contains_point(self, p: Point) -> bool:
        """Closed containment (boundary included)."""
        return self.min.x <= p.x <= self.max.x and self.min.y <= p.y <= self.max.y

    def corners(self) -> tuple[Point, Point, Point, Point]:
        """Corners in counter-clockwise order starting at min."""
        return (
            self.min,
            Point(self.max.x, self.min.y),
            self.max,
            Point(self.min.x, self.max.y),
        )

    def edge_segments(self) -> tuple[Segment, ...]:
        c = self.corners()
        return tuple(Segment(c[i], c[(i + 1) % 4]) for i in range(4))


def signed_area(vertices: Sequence[Point]) -> float:
    """Shoelace area; positive for counter-clockwise rings."""
    total = 0.0
    n = len(vertices)
    for i in range(n):
        a = vertices[i]
        b = vertices[(i + 1) % n]
        total += a.x * b.y - b.x * a.y
    return 0.5 * total


@dataclass(frozen=True)
class Polygon:
    """Simple, hole-free polygon with counter-clockwise vertices.

    The first vertex is not repeated at the end.  Construction validates
    vertex count, finiteness, simplicity and orientation, so any Polygon
    instance can be trusted by the predicates below.
    """

    vertices: tuple[Point, ...]

    def __post_init__(self) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise ValueError("polygon needs at least 3 vertices")
        for v in vs:
            if not _is_finite(v):
                raise ValueError("polygon vertices must be finite")
        n = len(vs)
        for i in range(n):
            if euclidean(vs[i], vs[(i + 1) % n]) <= EPS:
                raise ValueError("polygon has a zero-length edge")
        if self._self_intersects():
            raise ValueError("polygon is self-intersecting")
        if signed_area(vs) <= EPS:
            raise ValueError("polygon must be counter-clockwise with positive area")

    @classmethod
    def from_coords(cls, coords: Iterable[Sequence[float]]) -> "Polygon":
        return cls(tuple(Point(float(x), float(y)) for x, y in coords))

    def edge_pairs(self) -> Iterator[tuple[Point, Point]]:
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            yield vs[i], vs[(i + 1) % n]

    def bounding_rect(self) -> Rect:
        xs = [v.x for v in self.vertices]
        ys = [v.y for v in self.vertices]
        return Rect(Point(min(xs), min(ys)), Point(max(xs), max(ys)))

    def _self_intersects(self) -> bool:
        vs = self.vertices
        n = len(vs)
        for i in range(n):
            a1, a2 = vs[i], vs[(i + 1) % n]
            # adjacent edges may only share their common endpoint
            nxt = (i + 1) % n
            b1, b2 = vs[nxt], vs[(nxt + 1) % n]
            if _on_segment(b2, a1, a2) or _on_segment(a1, b1, b2):
                return True
            for j in range(i + 2, n):
                if i == 0 and j == n - 1:
                    continue  # last edge is adjacent to the first
                if segments_intersect(Segment(a1, a2), Segment(vs[j], vs[(j + 1) % n])):
                    return True
        return False


def orientation(a: Point, b: Point, c: Point) -> int:
    """Sign of the turn a->b->c: +1 counter-clockwise, -1 clockwise, 0 straight."""
    cross = (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    if cross > EPS:
        return 1
    if cross < -EPS:
        return -1
    return 0


def _point_segment_distance(p: Point, a: Point, b: Point) -> float:
    dx, dy = b.x - a.x, b.y - a.y
    length2 = dx * dx + dy * dy
    if length2 == 0.0:
        return math.hypot(p.x - a.x, p.y - a.y)
    t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / length2
    t = min(1.0, max(0.0, t))
    return math.hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy))


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return _point_segment_distance(p, a, b) <= EPS


def segments_intersect(s1: Segment, s2: Segment) -> bool:
    """True iff the closed segments share at least one point.

    Shared endpoints, T-touches and collinear overlap all count.
    """
    p1, p2 = s1
    q1, q2 = s2
    if p1 == p2 and q1 == q2:
        return euclidean(p1, q1) <= EPS
    if p1 == p2:
        return _on_segment(p1, q1, q2)
    if q1 == q2:
        return _on_segment(q1, p1, p2)

    d1 = orientation(q1, q2, p1)
    d2 = orientation(q1, q2, p2)
    d3 = orientation(p1, p2, q1)
    d4 = orientation(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and (
        (d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)
    ):
        return True
    if d1 == 0 and _on_segment(p1, q1, q2):
        return True
    if d2 == 0 and _on_segment(p2, q1, q2):
        return True
    if d3 == 0 and _on_segment(q1, p1, p2):
        return True
    if d4 == 0 and _on_segment(q2, p1, p2):
        return True
    return False


def point_on_polygon_boundary(p: Point, poly: Polygon) -> bool:
    return any(_point_segment_distance(p, a, b) <= EPS for a, b in poly.edge_pairs())


def _raycast_inside(p: Point, poly: Polygon) -> bool:
    # even-odd rule with a half-open crossing test; boundary cases are
    # handled by the caller, which checks the boundary first
    inside = False
    for a, b in poly.edge_pairs():
        if (a.y > p.y) != (b.y > p.y):
            x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if x_cross > p.x:
                inside = not inside
    return inside


def point_in_polygon(p: Point, poly: Polygon) -> bool:
    """Closed containment: the boundary counts as inside."""
    if point_on_polygon_boundary(p, poly):
        return True
    return _raycast_inside(p, poly)


def point_strictly_in_polygon(p: Point, poly: Polygon) -> bool:
    """Open containment: strictly interior, boundary excluded."""
    if point_on_polygon_boundary(p, poly):
        return False
    return _raycast_inside(p, poly)


def _split_params(a: Point, b: Point, c: Point, d: Point) -> list[float]:
    """Parameters t of segment a + t*(b-a) where it meets closed segment cd.

    Used only to split a segment at candidate boundary crossings, so it
    errs on the side of returning extra parameters.
    """
    rx, ry = b.x - a.x, b.y - a.y
    sx, sy = d.x - c.x, d.y - c.y
    qpx, qpy = c.x - a.x, c.y - a.y
    denom = rx * sy - ry * sx
    if abs(denom) > 1e-12:
        t = (qpx * sy - qpy * sx) / denom
        u = (qpx * ry - qpy * rx) / denom
        if -1e-9 <= t <= 1 + 1e-9 and -1e-9 <= u <= 1 + 1e-9:
            return [min(1.0, max(0.0, t))]
        return []
    # parallel: only a collinear overlap contributes split points
    if abs(qpx * ry - qpy * rx) > EPS * max(1.0, math.hypot(rx, ry)):
        return []
    rr = rx * rx + ry * ry
    if rr == 0.0:
        return []
    out = []
    for q in (c, d):
        t = ((q.x - a.x) * rx + (q.y - a.y) * ry) / rr
        if -1e-9 <= t <= 1 + 1e-9:
            out.append(min(1.0, max(0.0, t)))
    return out


def segment_crosses_polygon_interior(s: Segment, poly: Polygon) -> bool:
    """True iff some point of the segment lies strictly inside the polygon.

    Grazing contact (touching a vertex, or running along an edge) is not
    a crossing.  The segment is split at every candidate boundary hit and
    each open piece is classified by its midpoint.
    """
    if s.a == s.b:
        return point_strictly_in_polygon(s.a, poly)
    params = {0.0, 1.0}
    for c, d in poly.edge_pairs():
        params.update(_split_params(s.a, s.b, c, d))
    ordered = sorted(params)
    ax, ay = s.a
    dx, dy = s.b.x - ax, s.b.y - ay
    for t0, t1 in zip(ordered, ordered[1:]):
        if t1 - t0 <= 1e-12:
            continue
        tm = 0.5 * (t0 + t1)
        if point_strictly_in_polygon(Point(ax + tm * dx, ay + tm * dy), poly):
            return True
    return False


def rect_intersects_polygon(r: Rect, poly: Polygon) -> bool:
    """True iff the closed rectangle and closed polygon share a point."""
    for v in poly.vertices:
        if r.contains_point(v):
            return True
    for corner in r.corners():
        if point_in_polygon(corner, poly):
            return True
    for redge in r.edge_segments():
        for a, b in poly.edge_pairs():
            if segments_intersect(redge, Segment(a, b)):
                return True
    return False


def is_visible(a: Point, b: Point, obstacles: Sequence[Polygon]) -> bool:
    """True iff segment ab crosses no obstacle interior."""
    seg = Segment(a, b)
    return not any(segment_crosses_polygon_interior(seg, o) for o in obstacles)
