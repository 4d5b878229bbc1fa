"""Grid-based clustering of 2D point sets that respects polygonal obstacles.

The pipeline bins points into a uniform grid, labels cells dense or
obstructed, splits obstructed cells into connected non-obstructed
sub-cells, grows clusters over adjacent dense units by breadth-first
search, and places an obstacle-aware center in each cluster using
shortest paths over a visibility graph.
"""

from .center import CenterResult, cluster_mean, find_center, unit_cost
from .geometry import (
    EPS,
    Point,
    Polygon,
    Rect,
    Segment,
    euclidean,
    is_visible,
    point_in_polygon,
    point_strictly_in_polygon,
    rect_intersects_polygon,
    segment_crosses_polygon_interior,
    segments_intersect,
)
from .grid import (
    Cell,
    Grid,
    SpatialArea,
    area_from_points,
    build_grid,
    choose_grid_resolution,
    label_dense_cells,
    label_obstructed_cells,
)
from .pipeline import (
    ClusterInfo,
    ClusteringResult,
    Config,
    cluster,
    load_obstacles,
    load_points,
    render_svg,
    write_result,
)
from .region import (
    Region,
    Unit,
    assign_points,
    build_unit_adjacency,
    grow_regions,
    make_units,
    unit_adjacency,
    unit_of_point,
)
from .subcell import (
    Piece,
    SubCell,
    decompose_cell,
    default_pieces_per_axis,
    label_dense_subcells,
)
from .visibility import (
    UNREACHABLE,
    VisibilityGraph,
    build_visibility_graph,
    obstructed_distance,
    shortest_obstructed_path,
)

__version__ = "0.1.0"

__all__ = [
    "EPS",
    "UNREACHABLE",
    "Cell",
    "CenterResult",
    "ClusterInfo",
    "ClusteringResult",
    "Config",
    "Grid",
    "Piece",
    "Point",
    "Polygon",
    "Rect",
    "Region",
    "Segment",
    "SpatialArea",
    "SubCell",
    "Unit",
    "VisibilityGraph",
    "area_from_points",
    "assign_points",
    "build_grid",
    "build_unit_adjacency",
    "build_visibility_graph",
    "choose_grid_resolution",
    "cluster",
    "cluster_mean",
    "decompose_cell",
    "default_pieces_per_axis",
    "euclidean",
    "find_center",
    "grow_regions",
    "is_visible",
    "label_dense_cells",
    "label_dense_subcells",
    "label_obstructed_cells",
    "load_obstacles",
    "load_points",
    "make_units",
    "obstructed_distance",
    "point_in_polygon",
    "point_strictly_in_polygon",
    "rect_intersects_polygon",
    "render_svg",
    "segment_crosses_polygon_interior",
    "segments_intersect",
    "shortest_obstructed_path",
    "unit_adjacency",
    "unit_cost",
    "unit_of_point",
    "write_result",
]
