"""Batch command-line front end.

Reads a points file (and optionally an obstacles file), runs the
clustering pipeline, and writes the JSON result and/or an SVG rendering.
Exits 0 on success and 1 with a one-line diagnostic on any validation
error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .pipeline import Config, cluster, load_obstacles, load_points, render_svg, write_result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="obclust",
        description="Grid-based clustering of 2D points that respects polygonal obstacles.",
    )
    parser.add_argument("--points", required=True, help="points file, one x,y per line")
    parser.add_argument("--obstacles", help="JSON file with obstacle polygons")
    parser.add_argument("--result", help="write the JSON result here")
    parser.add_argument("--svg", help="write an SVG rendering here")
    parser.add_argument(
        "--t-target", type=float, default=100.0,
        help="desired average points per grid cell (default 100)",
    )
    parser.add_argument(
        "--dense-factor", type=float, default=1.0,
        help="multiplier on the dense threshold (default 1.0)",
    )
    parser.add_argument(
        "--pieces-per-axis", type=int, default=None,
        help="piece grid resolution inside obstructed cells (default: automatic)",
    )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        points, area = load_points(args.points)
        obstacles = load_obstacles(args.obstacles) if args.obstacles else []
        config = Config(
            t_target=args.t_target,
            dense_factor=args.dense_factor,
            pieces_per_axis=args.pieces_per_axis,
            area=area,
            points_path=args.points,
            obstacles_path=args.obstacles,
            result_path=args.result,
            svg_path=args.svg,
        )
        result = cluster(points, obstacles, config)
        if args.result:
            write_result(result, args.result)
        if args.svg:
            render_svg(result, points, obstacles, args.svg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(
        f"{len(result.clusters)} cluster(s), {len(result.noise)} noise point(s), "
        f"grid {result.grid.g}x{result.grid.g}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
