"""Region growing over dense non-obstructed units.

A *unit* is either a whole non-obstructed cell or one sub-cell of an
obstructed cell.  Units are adjacent when their footprints share a
boundary segment of positive length (4-connectivity; corner contact does
not count).  Regions grow by breadth-first search with a local
area-weighted density acceptance test.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .geometry import Point
from .grid import Grid
from .subcell import SubCell, piece_index_of

UnitId = tuple[int, int, int]  # (row, col, ordinal); ordinal 0 for whole cells

Decompositions = Mapping[tuple[int, int], Sequence[SubCell]]


@dataclass(frozen=True)
class Unit:
    uid: UnitId
    kind: str  # "cell" or "subcell"
    n_points: int
    mean: Point | None
    weight: float  # covered fraction of one cell's area
    dense: bool


@dataclass
class Region:
    """A connected set of dense units; points and center are filled later."""

    unit_ids: tuple[UnitId, ...]
    point_indices: list[int] = field(default_factory=list)

    @property
    def n_points(self) -> int:
        return len(self.point_indices)


def make_units(grid: Grid, decompositions: Decompositions) -> list[Unit]:
    """All clustering units in ascending id order.

    Non-obstructed cells become whole-cell units; each sub-cell of an
    obstructed cell becomes its own unit with the cell-area fraction it
    covers as weight.
    """
    units: list[Unit] = []
    for cell in grid.iter_cells():
        r, c = cell.index
        if not cell.obstructed:
            units.append(
                Unit(
                    uid=(r, c, 0),
                    kind="cell",
                    n_points=cell.n_points,
                    mean=cell.mean,
                    weight=1.0,
                    dense=cell.dense,
                )
            )
            continue
        for k, sc in enumerate(decompositions.get((r, c), ())):
            units.append(
                Unit(
                    uid=(r, c, k),
                    kind="subcell",
                    n_points=sc.n_points,
                    mean=sc.mean,
                    weight=sc.area_fraction,
                    dense=sc.dense,
                )
            )
    return units


def _border_pieces(
    sc: SubCell, toward: tuple[int, int]
) -> set[int]:
    """Cross-axis indices of the sub-cell's pieces on the border facing `toward`.

    `toward` is the (d_row, d_col) step from the sub-cell's parent cell to
    the neighboring cell.
    """
    p = sc.pieces_per_axis
    dr, dc = toward
    out = set()
    for pr, pc in sc.pieces:
        if dc == -1 and pc == 0:
            out.add(pr)
        elif dc == 1 and pc == p - 1:
            out.add(pr)
        elif dr == -1 and pr == 0:
            out.add(pc)
        elif dr == 1 and pr == p - 1:
            out.add(pc)
    return out


def unit_adjacency(
    u: Unit, v: Unit, grid: Grid, decompositions: Decompositions
) -> bool:
    """True iff the two units' footprints share an edge of positive length.

    Sub-cell adjacency is decided piece-wise: a border piece of one
    sub-cell must face a border piece of the other (or a whole cell)
    across the parent-cell boundary.
    """
    if u.uid == v.uid:
        return False
    (r1, c1, _), (r2, c2, _) = u.uid, v.uid
    dr, dc = r2 - r1, c2 - c1
    if abs(dr) + abs(dc) != 1:
        return False  # same cell (disjoint components) or not 4-adjacent
    if u.kind == "cell" and v.kind == "cell":
        return True
    if u.kind == "cell":
        return bool(_border_pieces(_subcell_of(v, decompositions), (-dr, -dc)))
    if v.kind == "cell":
        return bool(_border_pieces(_subcell_of(u, decompositions), (dr, dc)))
    su = _subcell_of(u, decompositions)
    sv = _subcell_of(v, decompositions)
    if su.pieces_per_axis != sv.pieces_per_axis:
        raise ValueError("sub-cell adjacency requires a uniform piece grid")
    return bool(_border_pieces(su, (dr, dc)) & _border_pieces(sv, (-dr, -dc)))


def _subcell_of(u: Unit, decompositions: Decompositions) -> SubCell:
    r, c, k = u.uid
    return decompositions[(r, c)][k]


def build_unit_adjacency(
    units: Sequence[Unit], grid: Grid, decompositions: Decompositions
) -> dict[UnitId, tuple[UnitId, ...]]:
    """Neighbor lists for every unit, each sorted ascending."""
    by_cell: dict[tuple[int, int], list[Unit]] = {}
    for u in units:
        by_cell.setdefault((u.uid[0], u.uid[1]), []).append(u)

    neighbors: dict[UnitId, list[UnitId]] = {u.uid: [] for u in units}
    for (r, c), cell_units in sorted(by_cell.items()):
        for dr, dc in ((0, 1), (1, 0)):  # each adjacent cell pair once
            other = by_cell.get((r + dr, c + dc))
            if not other:
                continue
            for u in cell_units:
                for v in other:
                    if unit_adjacency(u, v, grid, decompositions):
                        neighbors[u.uid].append(v.uid)
                        neighbors[v.uid].append(u.uid)
    return {uid: tuple(sorted(nbrs)) for uid, nbrs in neighbors.items()}


def grow_regions(
    units: Sequence[Unit],
    adjacency: Mapping[UnitId, Sequence[UnitId]],
    t: float,
) -> list[Region]:
    """Breadth-first region growing with a local average-density test.

    Starting from each unvisited dense unit in ascending id order, the
    frontier unit and all its neighbors form the small area; the area is
    accepted iff its area-weighted average point count (sum of counts over
    sum of cell-area weights) meets t.  Dense members of accepted areas
    join the region and unvisited ones are enqueued, each unit at most
    once globally.  Units that never appear in an accepted area are noise.
    """
    if t <= 0:
        raise ValueError("density threshold t must be positive")
    by_id = {u.uid: u for u in units}
    visited: set[UnitId] = set()
    regions: list[Region] = []
    for seed in sorted(by_id):
        unit = by_id[seed]
        if not unit.dense or seed in visited:
            continue
        visited.add(seed)
        enqueued_here = {seed}
        members: set[UnitId] = set()
        queue = deque([seed])
        while queue:
            cur = queue.popleft()
            nbrs = adjacency.get(cur, ())
            area = [cur, *nbrs]
            total_n = sum(by_id[x].n_points for x in area)
            total_w = sum(by_id[x].weight for x in area)
            if total_n < t * total_w:
                continue
            for x in area:
                if by_id[x].dense and x in enqueued_here:
                    members.add(x)
            for nb in nbrs:
                if by_id[nb].dense and nb not in visited:
                    visited.add(nb)
                    enqueued_here.add(nb)
                    members.add(nb)
                    queue.append(nb)
        if members:
            regions.append(Region(unit_ids=tuple(sorted(members))))
    regions.sort(key=lambda reg: reg.unit_ids[0])
    return regions


def unit_of_point(
    p: Point, grid: Grid, decompositions: Decompositions
) -> UnitId | None:
    """The unit a point belongs to, or None when it sits in obstructed pieces."""
    r, c = grid.cell_index_of(p)
    cell = grid.cell(r, c)
    if not cell.obstructed:
        return (r, c, 0)
    piece = piece_index_of(p, cell.rect, _pieces_per_axis_of(decompositions, (r, c)))
    for k, sc in enumerate(decompositions.get((r, c), ())):
        if piece in sc.pieces:
            return (r, c, k)
    return None


def _pieces_per_axis_of(decompositions: Decompositions, idx: tuple[int, int]) -> int:
    subcells = decompositions.get(idx, ())
    return subcells[0].pieces_per_axis if subcells else 1


def assign_points(
    regions: Sequence[Region],
    grid: Grid,
    decompositions: Decompositions,
    points: Sequence[Point],
) -> list[int]:
    """Label every point with its region index, -1 for noise.

    Also fills each region's point_indices in ascending point order.
    """
    unit_to_region: dict[UnitId, int] = {}
    for ridx, region in enumerate(regions):
        region.point_indices = []
        for uid in region.unit_ids:
            unit_to_region[uid] = ridx

    # sub-cell lookup by piece, built once per obstructed cell
    piece_maps: dict[tuple[int, int], dict[tuple[int, int], int]] = {}
    for idx, subcells in decompositions.items():
        piece_maps[idx] = {
            piece: k for k, sc in enumerate(subcells) for piece in sc.pieces
        }

    labels = []
    for i, p in enumerate(points):
        r, c = grid.cell_index_of(p)
        cell = grid.cell(r, c)
        if not cell.obstructed:
            uid: UnitId | None = (r, c, 0)
        else:
            pmap = piece_maps.get((r, c), {})
            ppa = _pieces_per_axis_of(decompositions, (r, c))
            k = pmap.get(piece_index_of(p, cell.rect, ppa))
            uid = (r, c, k) if k is not None else None
        label = unit_to_region.get(uid, -1) if uid is not None else -1
        labels.append(label)
        if label >= 0:
            regions[label].point_indices.append(i)
    return labels
