"""Command-line front end: gen-terrain, plan, bench, render.

Exit codes: 0 success, 2 invalid flags or config, 3 I/O or unreadable input,
4 terrain generation failure, 5 disconnected terrain, 6 path/terrain
mismatch. Standard output carries machine-readable results only; diagnostics
go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from slopecover import bench as bench_mod
from slopecover import svg as svg_mod
from slopecover.coverage import (
    PathMismatchError,
    circumnavigate,
    count_sacrificed_cells,
    load_path_file,
    path_cost,
    save_path,
    validate_path,
)
from slopecover.graph import DisconnectedGridError, average_slope, build_graph
from slopecover.spanning import classical_spanning_tree, minimum_spanning_tree, tree_weight
from slopecover.terrain import (
    TerrainGenerationError,
    TerrainGenSpec,
    generate_terrain,
    aggregate,
    load_height_grid,
    save_height_grid,
)
from slopecover.weights import WeightSpec

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_GENERATION = 4
EXIT_DISCONNECTED = 5
EXIT_MISMATCH = 6

_WEIGHT_TOKENS = tuple(spec.token for spec in WeightSpec)

_BENCH_DEFAULTS = {
    "terrains": 15,
    "rows": 250,
    "cols": 250,
    "obstacles": 30,
    "seed": 0,
    "weights": "pythagoras,penalty",
    "roughness_min": 0.05,
    "roughness_max": 0.5,
    "spacing": 1.0,
}


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slopecover",
        description="Slope-aware full-coverage route planning on elevation grids.",
        epilog=(
            "exit codes: 0 ok, 2 invalid flags, 3 I/O failure, 4 generation failure, "
            "5 disconnected terrain, 6 path/terrain mismatch"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen-terrain", help="generate a seeded random terrain file")
    gen.add_argument("--rows", type=int, required=True, help="fine-grid rows (even)")
    gen.add_argument("--cols", type=int, required=True, help="fine-grid columns (even)")
    gen.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    gen.add_argument(
        "--obstacles", type=int, default=0, help="number of rectangular obstacle patches"
    )
    gen.add_argument(
        "--roughness",
        type=float,
        default=0.0,
        help="target average slope of the aggregated grid, in [0, 1]",
    )
    gen.add_argument(
        "--spacing", type=float, default=1.0, help="metres between fine-cell centres"
    )
    gen.add_argument("-o", "--output", required=True, help="terrain file to write")
    gen.set_defaults(handler=cmd_gen_terrain)

    plan = sub.add_parser("plan", help="plan a coverage route over a terrain file")
    plan.add_argument("--terrain", required=True, help="terrain file to read")
    plan.add_argument(
        "--weight",
        choices=_WEIGHT_TOKENS,
        default="pythagoras",
        help="edge-weight function (default pythagoras)",
    )
    plan.add_argument(
        "--method",
        choices=("mst", "classical"),
        default="mst",
        help="spanning tree to circumnavigate (default mst)",
    )
    plan.add_argument("-o", "--output", required=True, help="path file to write")
    plan.set_defaults(handler=cmd_plan)

    bench = sub.add_parser("bench", help="run the MST-vs-baseline benchmark, emit CSV")
    bench.add_argument("--terrains", type=int, default=None, help="terrain count (default 15)")
    bench.add_argument("--rows", type=int, default=None, help="fine-grid rows (default 250)")
    bench.add_argument("--cols", type=int, default=None, help="fine-grid columns (default 250)")
    bench.add_argument(
        "--obstacles", type=int, default=None, help="obstacle patches per terrain (default 30)"
    )
    bench.add_argument("--seed", type=int, default=None, help="master seed (default 0)")
    bench.add_argument(
        "--weights",
        default=None,
        help="comma-separated weight specs (default pythagoras,penalty)",
    )
    bench.add_argument(
        "--roughness-min", type=float, default=None, help="schedule start (default 0.05)"
    )
    bench.add_argument(
        "--roughness-max", type=float, default=None, help="schedule end (default 0.5)"
    )
    bench.add_argument(
        "--spacing", type=float, default=None, help="fine-cell spacing (default 1.0)"
    )
    bench.add_argument(
        "--config",
        default=None,
        help="flat `key = value` config file; explicit flags override it",
    )
    bench.add_argument("-o", "--output", default=None, help="CSV file (default: stdout)")
    bench.set_defaults(handler=cmd_bench)

    render = sub.add_parser("render", help="render a terrain + path file to SVG")
    render.add_argument("--terrain", required=True, help="terrain file to read")
    render.add_argument("--path", required=True, help="path file to read")
    render.add_argument(
        "--show-tree", action="store_true", help="overlay the spanning tree edges"
    )
    render.add_argument(
        "--weight",
        choices=_WEIGHT_TOKENS,
        default="pythagoras",
        help="weight spec for --show-tree (default pythagoras)",
    )
    render.add_argument(
        "--method",
        choices=("mst", "classical"),
        default="mst",
        help="tree for --show-tree (default mst)",
    )
    render.add_argument(
        "--cell-px", type=float, default=10.0, help="pixels per fine cell (default 10)"
    )
    render.add_argument("-o", "--output", required=True, help="SVG file to write")
    render.set_defaults(handler=cmd_render)

    return parser


def cmd_gen_terrain(args: argparse.Namespace) -> int:
    try:
        spec = TerrainGenSpec(
            rows=args.rows,
            cols=args.cols,
            seed=args.seed,
            max_obstacles=args.obstacles,
            roughness=args.roughness,
            spacing=args.spacing,
        )
    except ValueError as exc:
        return _fail(EXIT_USAGE, f"invalid flags: {exc}")
    grid = generate_terrain(spec)
    save_height_grid(grid, args.output)
    return EXIT_OK


def cmd_plan(args: argparse.Namespace) -> int:
    grid = load_height_grid(args.terrain)
    mega = aggregate(grid)
    spec = WeightSpec.from_token(args.weight)
    graph = build_graph(mega, spec)
    if args.method == "mst":
        tree = minimum_spanning_tree(graph)
    else:
        tree = classical_spanning_tree(graph)
    path = circumnavigate(tree, mega)
    try:
        slope = average_slope(mega)
    except ValueError:  # single free mega cell: no adjacent pair, flat by definition
        slope = 0.0
    weight = tree_weight(tree, spec)
    cost = path_cost(path, grid, spec)
    sacrificed = count_sacrificed_cells(grid)
    save_path(path, args.output)
    print(f"avg_slope={slope:.6f}")
    print(f"tree_weight={weight:.6f}")
    print(f"path_length={len(path.cells)}")
    print(f"path_cost={cost:.6f}")
    print(f"sacrificed_cells={sacrificed}")
    return EXIT_OK


def _read_bench_config_file(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _BENCH_DEFAULTS:
            valid = ", ".join(sorted(_BENCH_DEFAULTS))
            raise ValueError(f"{path}:{lineno}: unknown key {key!r} (expected one of: {valid})")
        values[key] = value.strip()
    return values


def _bench_config_from_args(args: argparse.Namespace) -> bench_mod.BenchConfig:
    merged: dict[str, object] = dict(_BENCH_DEFAULTS)
    if args.config:
        merged.update(_read_bench_config_file(args.config))
    flags = {
        "terrains": args.terrains,
        "rows": args.rows,
        "cols": args.cols,
        "obstacles": args.obstacles,
        "seed": args.seed,
        "weights": args.weights,
        "roughness_min": args.roughness_min,
        "roughness_max": args.roughness_max,
        "spacing": args.spacing,
    }
    for key, value in flags.items():
        if value is not None:
            merged[key] = value
    specs = tuple(
        WeightSpec.from_token(token.strip())
        for token in str(merged["weights"]).split(",")
        if token.strip()
    )
    return bench_mod.BenchConfig.from_master_seed(
        master_seed=int(merged["seed"]),
        terrain_count=int(merged["terrains"]),
        rows=int(merged["rows"]),
        cols=int(merged["cols"]),
        max_obstacles=int(merged["obstacles"]),
        roughness_min=float(merged["roughness_min"]),
        roughness_max=float(merged["roughness_max"]),
        weight_specs=specs,
        spacing=float(merged["spacing"]),
    )


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        cfg = _bench_config_from_args(args)
    except OSError as exc:
        return _fail(EXIT_IO, str(exc))
    except ValueError as exc:
        return _fail(EXIT_USAGE, f"invalid benchmark config: {exc}")
    records = bench_mod.run_benchmark(cfg)
    trends = bench_mod.trend_statistics(records) if cfg.terrain_count >= 3 else ()
    text = bench_mod.format_csv(records, trends)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    grid = load_height_grid(args.terrain)
    path = load_path_file(args.path)
    validate_path(path, grid)
    tree = None
    if args.show_tree:
        mega = aggregate(grid)
        graph = build_graph(mega, WeightSpec.from_token(args.weight))
        if args.method == "mst":
            tree = minimum_spanning_tree(graph)
        else:
            tree = classical_spanning_tree(graph)
    text = svg_mod.render_svg(grid, path, tree=tree, cell_px=args.cell_px)
    with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except TerrainGenerationError as exc:
        return _fail(EXIT_GENERATION, str(exc))
    except DisconnectedGridError as exc:
        return _fail(EXIT_DISCONNECTED, str(exc))
    except PathMismatchError as exc:
        return _fail(EXIT_MISMATCH, str(exc))
    except (OSError, ValueError) as exc:
        return _fail(EXIT_IO, str(exc))


if __name__ == "__main__":
    sys.exit(main())
