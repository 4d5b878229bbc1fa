"""End-to-end clustering pipeline, file ingestion and result output.

File formats:

* points: text, one ``x,y`` pair per line; an optional single header
  line and ``#`` comment lines are skipped;
* obstacles: JSON, an array of polygons, each an array of ``[x, y]``
  vertex pairs with no closing repeat;
* result: JSON with a fixed key order, byte-stable across runs;
* optional SVG rendering of obstacles, clustered points, centers and
  grid lines.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from typing import Sequence

from .center import CenterResult, find_center
from .geometry import Point, Polygon, Rect, point_strictly_in_polygon, signed_area
from .grid import (
    Grid,
    SpatialArea,
    area_from_points,
    build_grid,
    choose_grid_resolution,
    label_dense_cells,
    label_obstructed_cells,
)
from .region import (
    Region,
    assign_points,
    build_unit_adjacency,
    grow_regions,
    make_units,
)
from .subcell import decompose_cell, default_pieces_per_axis, label_dense_subcells
from .visibility import build_visibility_graph


@dataclass
class Config:
    """Free parameters of the pipeline plus optional I/O paths."""

    t_target: float = 100.0  # desired average points per cell
    dense_factor: float = 1.0  # multiplier on the dense threshold
    pieces_per_axis: int | None = None  # None: derived from t_target
    area: SpatialArea | None = None  # None: bounding box of the points + 1%
    points_path: str | None = None
    obstacles_path: str | None = None
    result_path: str | None = None
    svg_path: str | None = None

    def __post_init__(self) -> None:
        if self.t_target <= 0:
            raise ValueError("t_target must be positive")
        if self.dense_factor <= 0:
            raise ValueError("dense_factor must be positive")
        if self.pieces_per_axis is not None and self.pieces_per_axis < 1:
            raise ValueError("pieces_per_axis must be at least 1")


@dataclass
class ClusterInfo:
    id: int
    center: Point
    center_kind: str
    cost: float | None
    unit_ids: list[tuple[int, int, int]]
    point_indices: list[int]

    @property
    def n_points(self) -> int:
        return len(self.point_indices)


@dataclass
class ClusteringResult:
    clusters: list[ClusterInfo]
    noise: list[int]
    labels: list[int]
    grid: Grid
    regions: list[Region] = field(repr=False, default_factory=list)

    @property
    def n_obstructed_cells(self) -> int:
        return sum(1 for cell in self.grid.iter_cells() if cell.obstructed)

    def to_dict(self) -> dict:
        return {
            "grid": {
                "g": self.grid.g,
                "t": self.grid.t,
                "cells": self.grid.cell_count,
                "obstructed_cells": self.n_obstructed_cells,
            },
            "clusters": [
                {
                    "id": c.id,
                    "center": [c.center.x, c.center.y],
                    "center_kind": c.center_kind,
                    "cost": c.cost,
                    "units": [list(uid) for uid in c.unit_ids],
                    "n_points": c.n_points,
                    "point_indices": c.point_indices,
                }
                for c in self.clusters
            ],
            "noise": self.noise,
        }


def load_points(path: str) -> tuple[list[Point], SpatialArea]:
    """Parse the points file and derive the spatial area from its bounds."""
    points: list[Point] = []
    seen_data = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",")]
            values = []
            for f in fields:
                try:
                    values.append(float(f))
                except ValueError:
                    values.append(None)
            if not seen_data and all(v is None for v in values):
                seen_data = True  # single header line
                continue
            seen_data = True
            if len(values) != 2 or any(v is None for v in values):
                raise ValueError(f"{path}:{lineno}: expected 'x,y', got {line!r}")
            x, y = values
            if not (math.isfinite(x) and math.isfinite(y)):
                raise ValueError(f"{path}:{lineno}: coordinates must be finite")
            points.append(Point(x, y))
    if not points:
        raise ValueError(f"{path}: no points found")
    return points, area_from_points(points)


def load_obstacles(path: str) -> list[Polygon]:
    """Parse and validate the obstacle polygons.

    Clockwise rings are reversed with a warning; self-intersecting or
    degenerate polygons are rejected with their index.
    """
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list):
        raise ValueError(f"{path}: expected a JSON array of polygons")
    obstacles = []
    for i, ring in enumerate(data):
        try:
            coords = [Point(float(x), float(y)) for x, y in ring]
        except (TypeError, ValueError) as exc:
            raise ValueError(f"{path}: obstacle {i}: malformed vertex list") from exc
        if len(coords) >= 3 and signed_area(coords) < 0:
            warnings.warn(f"{path}: obstacle {i} is clockwise, reversing", stacklevel=2)
            coords.reverse()
        try:
            obstacles.append(Polygon(tuple(coords)))
        except ValueError as exc:
            raise ValueError(f"{path}: obstacle {i}: {exc}") from exc
    return obstacles


def _reject_points_in_obstacles(
    points: Sequence[Point], obstacles: Sequence[Polygon]
) -> None:
    for oi, obstacle in enumerate(obstacles):
        bbox = obstacle.bounding_rect()
        for i, p in enumerate(points):
            if bbox.contains_point(p) and point_strictly_in_polygon(p, obstacle):
                raise ValueError(f"point {i} lies strictly inside obstacle {oi}")


def cluster(
    points: Sequence[Point | tuple[float, float]],
    obstacles: Sequence[Polygon] = (),
    config: Config | None = None,
) -> ClusteringResult:
    """Run the full pipeline: grid, labels, sub-cells, regions, centers."""
    cfg = config or Config()
    pts = [Point(float(x), float(y)) for x, y in points]
    if not pts:
        raise ValueError("no points to cluster")
    _reject_points_in_obstacles(pts, obstacles)

    area = cfg.area or area_from_points(pts)
    g = choose_grid_resolution(len(pts), cfg.t_target)
    grid = build_grid(pts, area, g, dense_factor=cfg.dense_factor)
    label_dense_cells(grid)
    label_obstructed_cells(grid, obstacles)

    pieces = cfg.pieces_per_axis or default_pieces_per_axis(
        len(pts) / (g * g), cfg.t_target
    )
    cell_points: dict[tuple[int, int], list[Point]] = {}
    for p in pts:
        cell_points.setdefault(grid.cell_index_of(p), []).append(p)
    decompositions = {}
    for cell in grid.iter_cells():
        if cell.obstructed:
            subcells = decompose_cell(
                cell, cell_points.get(cell.index, ()), obstacles, pieces
            )
            label_dense_subcells(subcells, grid.t)
            decompositions[cell.index] = subcells

    units = make_units(grid, decompositions)
    adjacency = build_unit_adjacency(units, grid, decompositions)
    regions = grow_regions(units, adjacency, grid.t)
    labels = assign_points(regions, grid, decompositions, pts)

    units_by_id = {u.uid: u for u in units}
    vg = build_visibility_graph(obstacles) if obstacles else None
    clusters = []
    for ridx, region in enumerate(regions):
        result: CenterResult = find_center(region, pts, units_by_id, obstacles, vg)
        clusters.append(
            ClusterInfo(
                id=ridx,
                center=result.center,
                center_kind=result.kind,
                cost=result.cost,
                unit_ids=list(region.unit_ids),
                point_indices=list(region.point_indices),
            )
        )
    noise = [i for i, label in enumerate(labels) if label < 0]
    return ClusteringResult(
        clusters=clusters, noise=noise, labels=labels, grid=grid, regions=list(regions)
    )


def write_result(result: ClusteringResult, path: str) -> None:
    """Serialize the result as JSON with a fixed key order."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(result.to_dict(), fh, indent=2)
        fh.write("\n")


_PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


def render_svg(
    result: ClusteringResult,
    points: Sequence[Point],
    obstacles: Sequence[Polygon],
    path: str,
    canvas: float = 800.0,
) -> None:
    """Draw obstacles (gray), points (one color per cluster, noise black),
    centers (crosses) and grid lines (thin) to an SVG file."""
    bounds = result.grid.area.bounds
    pad = 10.0
    scale = (canvas - 2 * pad) / max(bounds.width, bounds.height)
    width = bounds.width * scale + 2 * pad
    height = bounds.height * scale + 2 * pad

    def sx(x: float) -> float:
        return pad + (x - bounds.min.x) * scale

    def sy(y: float) -> float:
        return height - pad - (y - bounds.min.y) * scale  # flip: SVG y runs down

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1f}" '
        f'height="{height:.1f}" viewBox="0 0 {width:.1f} {height:.1f}">',
        f'<rect x="0" y="0" width="{width:.1f}" height="{height:.1f}" fill="white"/>',
    ]

    g = result.grid.g
    for k in range(g + 1):
        x = sx(bounds.min.x + bounds.width * k / g)
        y = sy(bounds.min.y + bounds.height * k / g)
        out.append(
            f'<line x1="{x:.2f}" y1="{sy(bounds.min.y):.2f}" x2="{x:.2f}" '
            f'y2="{sy(bounds.max.y):.2f}" stroke="#dddddd" stroke-width="0.5"/>'
        )
        out.append(
            f'<line x1="{sx(bounds.min.x):.2f}" y1="{y:.2f}" x2="{sx(bounds.max.x):.2f}" '
            f'y2="{y:.2f}" stroke="#dddddd" stroke-width="0.5"/>'
        )

    for obstacle in obstacles:
        pts = " ".join(f"{sx(v.x):.2f},{sy(v.y):.2f}" for v in obstacle.vertices)
        out.append(
            f'<polygon points="{pts}" fill="#aaaaaa" stroke="#666666" stroke-width="1"/>'
        )

    labels = result.labels
    for i, p in enumerate(points):
        color = _PALETTE[labels[i] % len(_PALETTE)] if labels[i] >= 0 else "#000000"
        out.append(f'<circle cx="{sx(p.x):.2f}" cy="{sy(p.y):.2f}" r="2" fill="{color}"/>')

    for c in result.clusters:
        x, y = sx(c.center.x), sy(c.center.y)
        color = _PALETTE[c.id % len(_PALETTE)]
        out.append(
            f'<path d="M {x - 6:.2f} {y:.2f} H {x + 6:.2f} M {x:.2f} {y - 6:.2f} '
            f'V {y + 6:.2f}" stroke="{color}" stroke-width="2.5" fill="none"/>'
        )

    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out))
        fh.write("\n")
