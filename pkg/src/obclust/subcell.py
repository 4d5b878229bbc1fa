"""Decomposition of obstructed cells into connected non-obstructed sub-cells.

Each obstructed cell is divided into a finer grid of equal-area pieces;
a piece is obstructed by the same rectangle/polygon test used for cells.
Maximal 4-connected components of non-obstructed pieces become sub-cells,
each carrying its own point count, mean, and covered-area fraction.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .geometry import Point, Polygon, Rect, rect_intersects_polygon
from .grid import Cell


@dataclass(frozen=True)
class Piece:
    index: tuple[int, int]
    rect: Rect
    obstructed: bool


@dataclass
class SubCell:
    parent: tuple[int, int]
    pieces: tuple[tuple[int, int], ...]  # sorted piece indices, 4-connected
    pieces_per_axis: int
    n_points: int
    mean: Point | None
    area_fraction: float
    dense: bool = False


def default_pieces_per_axis(avg_points_per_cell: float, t_target: float) -> int:
    """Piece grid sized so a piece holds roughly a tenth of a cell's target load."""
    if t_target <= 0:
        raise ValueError("t_target must be positive")
    per_piece = t_target / 10.0
    p = math.ceil(math.sqrt(max(avg_points_per_cell, 0.0) / per_piece))
    return min(64, max(4, p))


def piece_index_of(p: Point, cell_rect: Rect, pieces_per_axis: int) -> tuple[int, int]:
    """Map a point inside the cell to its piece, edge ties to the lower index."""
    w = cell_rect.width / pieces_per_axis
    h = cell_rect.height / pieces_per_axis
    pc = min(pieces_per_axis - 1, max(0, math.ceil((p.x - cell_rect.min.x) / w) - 1))
    pr = min(pieces_per_axis - 1, max(0, math.ceil((p.y - cell_rect.min.y) / h) - 1))
    return pr, pc


def _piece_rect(cell_rect: Rect, pieces_per_axis: int, pr: int, pc: int) -> Rect:
    w = cell_rect.width / pieces_per_axis
    h = cell_rect.height / pieces_per_axis
    x0 = cell_rect.min.x + pc * w
    y0 = cell_rect.min.y + pr * h
    x1 = cell_rect.max.x if pc == pieces_per_axis - 1 else cell_rect.min.x + (pc + 1) * w
    y1 = cell_rect.max.y if pr == pieces_per_axis - 1 else cell_rect.min.y + (pr + 1) * h
    return Rect(Point(x0, y0), Point(x1, y1))


def make_pieces(
    cell_rect: Rect, obstacles: Sequence[Polygon], pieces_per_axis: int
) -> list[list[Piece]]:
    """The cell's piece grid with obstruction flags, indexed [row][col]."""
    pieces = []
    for pr in range(pieces_per_axis):
        row = []
        for pc in range(pieces_per_axis):
            rect = _piece_rect(cell_rect, pieces_per_axis, pr, pc)
            blocked = any(rect_intersects_polygon(rect, o) for o in obstacles)
            row.append(Piece(index=(pr, pc), rect=rect, obstructed=blocked))
        pieces.append(row)
    return pieces


def decompose_cell(
    cell: Cell,
    cell_points: Sequence[Point],
    obstacles: Sequence[Polygon],
    pieces_per_axis: int,
) -> list[SubCell]:
    """Split an obstructed cell into its non-obstructed sub-cells.

    Sub-cells are the maximal 4-connected components of non-obstructed
    pieces, returned in order of their smallest member piece index.
    Points that land in an obstructed piece belong to no sub-cell.
    """
    if pieces_per_axis < 1:
        raise ValueError("pieces_per_axis must be at least 1")
    p = pieces_per_axis
    pieces = make_pieces(cell.rect, obstacles, p)

    # flood fill in row-major scan order: each component is discovered at
    # its smallest piece index, which fixes the output order
    comp_of: dict[tuple[int, int], int] = {}
    n_components = 0
    for pr in range(p):
        for pc in range(p):
            if pieces[pr][pc].obstructed or (pr, pc) in comp_of:
                continue
            comp = n_components
            n_components += 1
            queue = deque([(pr, pc)])
            comp_of[(pr, pc)] = comp
            while queue:
                r, c = queue.popleft()
                for rr, cc in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                    if 0 <= rr < p and 0 <= cc < p and not pieces[rr][cc].obstructed:
                        if (rr, cc) not in comp_of:
                            comp_of[(rr, cc)] = comp
                            queue.append((rr, cc))

    members: list[list[tuple[int, int]]] = [[] for _ in range(n_components)]
    for pr in range(p):
        for pc in range(p):
            comp = comp_of.get((pr, pc))
            if comp is not None:
                members[comp].append((pr, pc))

    counts = [0] * n_components
    xsums: list[list[float]] = [[] for _ in range(n_components)]
    ysums: list[list[float]] = [[] for _ in range(n_components)]
    for pt in cell_points:
        comp = comp_of.get(piece_index_of(pt, cell.rect, p))
        if comp is None:
            continue  # obstructed piece: the point is next to or on an obstacle
        counts[comp] += 1
        xsums[comp].append(pt.x)
        ysums[comp].append(pt.y)

    subcells = []
    for comp in range(n_components):
        n = counts[comp]
        mean = Point(math.fsum(xsums[comp]) / n, math.fsum(ysums[comp]) / n) if n else None
        subcells.append(
            SubCell(
                parent=cell.index,
                pieces=tuple(members[comp]),
                pieces_per_axis=p,
                n_points=n,
                mean=mean,
                area_fraction=len(members[comp]) / (p * p),
            )
        )
    return subcells


def label_dense_subcells(subcells: Sequence[SubCell], t: float) -> Sequence[SubCell]:
    """Dense iff the count meets the area-proportional threshold."""
    for sc in subcells:
        sc.dense = sc.n_points >= sc.area_fraction * t
    return subcells
