"""Obstacle-aware cluster centers.

A region's center is the plain mean of its points unless that mean falls
inside an obstacle (closed containment, so a mean on an obstacle edge
also counts).  In that case the center moves to the member-unit mean
minimizing the sum of squared obstructed distances to all member-unit
means.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .geometry import Point, Polygon, point_in_polygon
from .region import Region, Unit, UnitId
from .visibility import VisibilityGraph, build_visibility_graph, obstructed_distance


@dataclass(frozen=True)
class CenterResult:
    center: Point
    kind: str  # "plain-mean" or "min-cost-unit-mean"
    cost: float | None = None  # squared-distance sum, cost branch only
    unit_id: UnitId | None = None  # chosen unit, cost branch only


def cluster_mean(region: Region, points: Sequence[Point]) -> Point:
    """Arithmetic mean of all the region's points."""
    if not region.point_indices:
        raise ValueError("cannot take the mean of a region with no points")
    xs = math.fsum(points[i].x for i in region.point_indices)
    ys = math.fsum(points[i].y for i in region.point_indices)
    n = len(region.point_indices)
    return Point(xs / n, ys / n)


def unit_cost(
    candidate: Unit,
    region_units: Sequence[Unit],
    obstacles: Sequence[Polygon],
    vg: VisibilityGraph,
) -> float:
    """Sum of squared obstructed distances from the candidate's mean to every
    member unit's mean (the candidate's own zero term included)."""
    assert candidate.mean is not None, "dense units always contain points"
    total = 0.0
    for u in region_units:
        assert u.mean is not None
        d = obstructed_distance(candidate.mean, u.mean, obstacles, vg)
        total += d * d
    return total


def find_center(
    region: Region,
    points: Sequence[Point],
    units_by_id: Mapping[UnitId, Unit],
    obstacles: Sequence[Polygon],
    vg: VisibilityGraph | None = None,
) -> CenterResult:
    """Plain mean if it avoids every obstacle, else the min-cost unit mean.

    Cost ties break toward the smallest unit id, which keeps symmetric
    scenes deterministic.
    """
    mean = cluster_mean(region, points)
    if not any(point_in_polygon(mean, o) for o in obstacles):
        return CenterResult(center=mean, kind="plain-mean")

    if vg is None:
        vg = build_visibility_graph(obstacles)
    member_units = [units_by_id[uid] for uid in region.unit_ids]
    best_uid: UnitId | None = None
    best_cost = math.inf
    for u in member_units:  # region.unit_ids is sorted, so first win = smallest id
        cost = unit_cost(u, member_units, obstacles, vg)
        if best_uid is None or cost < best_cost:
            best_cost = cost
            best_uid = u.uid
    assert best_uid is not None
    chosen = units_by_id[best_uid]
    assert chosen.mean is not None
    return CenterResult(
        center=chosen.mean, kind="min-cost-unit-mean", cost=best_cost, unit_id=best_uid
    )
