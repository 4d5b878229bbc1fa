"""Uniform rectangular grid over the spatial area with per-cell statistics.

Cells are indexed ``(row, col)`` with row 0 at the bottom (minimum y).
A point landing exactly on a shared cell edge belongs to the cell with
the lower index, so every point maps to exactly one cell.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .geometry import Point, Polygon, Rect, rect_intersects_polygon


@dataclass(frozen=True)
class SpatialArea:
    """The rectangular extent every input point must fall into."""

    bounds: Rect

    @property
    def width(self) -> float:
        return self.bounds.width

    @property
    def height(self) -> float:
        return self.bounds.height


def area_from_points(points: Sequence[Point], margin: float = 0.01) -> SpatialArea:
    """Tight bounding box of the points, expanded by ``margin`` per side.

    The expansion keeps boundary points interior; degenerate extents fall
    back to a fixed pad so the area stays a valid rectangle.
    """
    if not points:
        raise ValueError("cannot derive a spatial area from zero points")
    xs = [p.x for p in points]
    ys = [p.y for p in points]
    min_x, max_x = min(xs), max(xs)
    min_y, max_y = min(ys), max(ys)
    span_x = max_x - min_x
    span_y = max_y - min_y
    pad_x = margin * span_x if span_x > 0 else (margin * span_y if span_y > 0 else 0.5)
    pad_y = margin * span_y if span_y > 0 else (margin * span_x if span_x > 0 else 0.5)
    return SpatialArea(
        Rect(Point(min_x - pad_x, min_y - pad_y), Point(max_x + pad_x, max_y + pad_y))
    )


@dataclass
class Cell:
    index: tuple[int, int]
    rect: Rect
    n_points: int = 0
    mean: Point | None = None
    dense: bool = False
    obstructed: bool = False


@dataclass
class Grid:
    """g x g cells tiling the area, plus the dense threshold ``t``."""

    area: SpatialArea
    g: int
    t: float
    cells: list[list[Cell]] = field(repr=False)

    @property
    def cell_count(self) -> int:
        return self.g * self.g

    def cell(self, row: int, col: int) -> Cell:
        return self.cells[row][col]

    def iter_cells(self) -> Iterator[Cell]:
        for row in self.cells:
            yield from row

    def cell_index_of(self, p: Point) -> tuple[int, int]:
        """Map a point inside the area to its (row, col) cell index."""
        b = self.area.bounds
        col = _axis_index(p.x, b.min.x, self.area.width / self.g, self.g)
        row = _axis_index(p.y, b.min.y, self.area.height / self.g, self.g)
        return row, col


def _axis_index(value: float, origin: float, step: float, n: int) -> int:
    # ceil(u) - 1 sends exact edge hits to the lower-index cell
    u = (value - origin) / step
    return min(n - 1, max(0, math.ceil(u) - 1))


def choose_grid_resolution(n_points: int, t_target: float) -> int:
    """Smallest per-axis division count whose average cell load <= t_target."""
    if n_points < 0:
        raise ValueError("point count must be non-negative")
    if t_target <= 0:
        raise ValueError("t_target must be positive")
    return max(1, math.ceil(math.sqrt(n_points / t_target)))


def _cell_rect(area: SpatialArea, g: int, row: int, col: int) -> Rect:
    b = area.bounds
    w = area.width / g
    h = area.height / g
    x0 = b.min.x + col * w
    y0 = b.min.y + row * h
    # snap the outermost edges exactly onto the area boundary
    x1 = b.max.x if col == g - 1 else b.min.x + (col + 1) * w
    y1 = b.max.y if row == g - 1 else b.min.y + (row + 1) * h
    return Rect(Point(x0, y0), Point(x1, y1))


def build_grid(
    points: Sequence[Point],
    area: SpatialArea,
    g: int,
    dense_factor: float = 1.0,
) -> Grid:
    """Single pass over the points: bin them, count, and accumulate means.

    The dense threshold is set to ``dense_factor * N / g**2`` (the average
    number of points per cell scaled by the configurable factor).

    Raises ValueError naming the first point that falls outside the area.
    """
    if g < 1:
        raise ValueError("grid resolution must be at least 1")
    if dense_factor <= 0:
        raise ValueError("dense_factor must be positive")
    b = area.bounds
    n = len(points)

    cells = [
        [Cell(index=(r, c), rect=_cell_rect(area, g, r, c)) for c in range(g)]
        for r in range(g)
    ]
    grid = Grid(area=area, g=g, t=dense_factor * n / (g * g), cells=cells)
    if n == 0:
        return grid

    xs = np.fromiter((p.x for p in points), dtype=np.float64, count=n)
    ys = np.fromiter((p.y for p in points), dtype=np.float64, count=n)
    outside = ~(
        np.isfinite(xs)
        & np.isfinite(ys)
        & (xs >= b.min.x)
        & (xs <= b.max.x)
        & (ys >= b.min.y)
        & (ys <= b.max.y)
    )
    if outside.any():
        i = int(np.argmax(outside))
        raise ValueError(f"point {i} ({xs[i]}, {ys[i]}) is outside the spatial area")

    cols = np.clip(np.ceil((xs - b.min.x) / (area.width / g)).astype(np.int64) - 1, 0, g - 1)
    rows = np.clip(np.ceil((ys - b.min.y) / (area.height / g)).astype(np.int64) - 1, 0, g - 1)
    flat = rows * g + cols
    counts = np.bincount(flat, minlength=g * g)
    sum_x = np.bincount(flat, weights=xs, minlength=g * g)
    sum_y = np.bincount(flat, weights=ys, minlength=g * g)

    for r in range(g):
        for c in range(g):
            k = r * g + c
            count = int(counts[k])
            cell = cells[r][c]
            cell.n_points = count
            if count > 0:
                cell.mean = Point(sum_x[k] / count, sum_y[k] / count)
    return grid


def label_dense_cells(grid: Grid) -> Grid:
    """Mark each cell dense iff its point count meets the threshold."""
    for cell in grid.iter_cells():
        cell.dense = cell.n_points >= grid.t
    return grid


def label_obstructed_cells(grid: Grid, obstacles: Sequence[Polygon]) -> Grid:
    """Mark each cell obstructed iff its rectangle meets any obstacle."""
    for cell in grid.iter_cells():
        cell.obstructed = any(rect_intersects_polygon(cell.rect, o) for o in obstacles)
    return grid
