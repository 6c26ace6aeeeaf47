"""Command-line interface: rdp, compress, compare, sweep, stats."""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from typing import Sequence

import numpy as np

from .geometry import mean_adjacent_distance
from .pipeline import (
    DEFAULT_NORMALIZE_MEAN,
    compare_methods,
    compress_route,
    epsilon_sweep,
    render_comparison_table,
    write_sweep_csv,
)
from .qaoa import QaoaConfig
from .rdp import rdp_simplify
from .tracks import load_route, save_route

__all__ = ["main", "build_parser"]

REPORT_SCHEMA_VERSION = 1


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, help="route file (.gpx or .csv)")


def _add_solver_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--qubit-budget",
        type=int,
        default=12,
        help="max binary variables per solved segment (default 12)",
    )
    parser.add_argument(
        "--method",
        choices=["exact", "qaoa"],
        default="exact",
        help="segment solver (default exact)",
    )
    parser.add_argument("--reps", type=int, default=2, help="QAOA layers (default 2)")
    parser.add_argument(
        "--shots", type=int, default=4096, help="QAOA measurement shots (default 4096)"
    )
    parser.add_argument("--seed", type=int, default=1234, help="base RNG seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="routezip",
        description="Compress GPS routes with RDP or candidate-graph optimization.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_rdp = sub.add_parser("rdp", help="classical RDP simplification")
    _add_input(p_rdp)
    p_rdp.add_argument("--epsilon", type=float, required=True)
    p_rdp.add_argument("--output", help="write the simplified route (.gpx or .csv)")

    p_comp = sub.add_parser("compress", help="graph-optimization compression")
    _add_input(p_comp)
    p_comp.add_argument("--epsilon", type=float, required=True)
    p_comp.add_argument("--output", help="write the compressed route (.gpx or .csv)")
    _add_solver_options(p_comp)
    p_comp.add_argument("--report", help="write a JSON report here")
    p_comp.add_argument("--plot", help="render the kept-points overlay PNG here")
    p_comp.add_argument(
        "--qaoa-dump",
        help="directory for per-segment QAOA traces and histograms (qaoa method only)",
    )

    p_cmp = sub.add_parser("compare", help="run both methods and print the table")
    _add_input(p_cmp)
    p_cmp.add_argument("--epsilon", type=float, required=True)
    _add_solver_options(p_cmp)
    p_cmp.add_argument("--json", help="write the comparison as JSON here")
    p_cmp.add_argument("--plot", help="render the side-by-side comparison PNG here")

    p_sweep = sub.add_parser("sweep", help="compare both methods across epsilons")
    _add_input(p_sweep)
    group = p_sweep.add_mutually_exclusive_group(required=True)
    group.add_argument("--epsilons", help="comma-separated epsilon list")
    group.add_argument(
        "--eps-range", help="start:stop:steps linear epsilon grid (inclusive)"
    )
    p_sweep.add_argument(
        "--normalize",
        action="store_true",
        help=f"rescale the route to a mean point spacing of {DEFAULT_NORMALIZE_MEAN}",
    )
    p_sweep.add_argument(
        "--normalize-mean",
        type=float,
        default=None,
        help="rescale to this mean point spacing instead (implies --normalize)",
    )
    _add_solver_options(p_sweep)
    p_sweep.add_argument("--output", help="write the sweep CSV here (default stdout)")
    p_sweep.add_argument("--plot", help="render the ratio-vs-epsilon PNG here")

    p_stats = sub.add_parser("stats", help="point count and mean adjacent distance")
    _add_input(p_stats)

    return parser


def _qaoa_config(args: argparse.Namespace) -> QaoaConfig:
    return QaoaConfig(reps=args.reps, shots=args.shots, seed=args.seed)


def _parse_epsilons(args: argparse.Namespace) -> list[float]:
    if args.epsilons:
        try:
            values = [float(v) for v in args.epsilons.split(",") if v.strip()]
        except ValueError:
            raise ValueError(f"bad --epsilons value {args.epsilons!r}") from None
    else:
        parts = args.eps_range.split(":")
        if len(parts) != 3:
            raise ValueError("--eps-range must be start:stop:steps")
        try:
            start, stop = float(parts[0]), float(parts[1])
            steps = int(parts[2])
        except ValueError:
            raise ValueError(f"bad --eps-range value {args.eps_range!r}") from None
        if steps < 1:
            raise ValueError("--eps-range needs at least 1 step")
        values = [float(v) for v in np.linspace(start, stop, steps)]
    if not values:
        raise ValueError("no epsilons given")
    return values


def _cmd_stats(args: argparse.Namespace) -> int:
    route = load_route(args.input)
    print(f"points: {len(route)}")
    print(f"mean adjacent distance: {mean_adjacent_distance(route):.9g}")
    return 0


def _cmd_rdp(args: argparse.Namespace) -> int:
    route = load_route(args.input)
    result = rdp_simplify(route, args.epsilon)
    kept = result.kept_indices
    print(f"selected {len(kept)} of {len(route)} points (epsilon={args.epsilon:g})")
    if args.output:
        save_route(args.output, route.take(kept))
        print(f"wrote {args.output}")
    return 0


def _cmd_compress(args: argparse.Namespace) -> int:
    route = load_route(args.input)
    cfg = _qaoa_config(args)
    kept, report = compress_route(
        route, args.epsilon, args.qubit_budget, args.method, cfg
    )
    print(
        f"selected {report.selected_points} of {report.total_points} points "
        f"(epsilon={args.epsilon:g}, method={args.method})"
    )
    if args.output:
        save_route(args.output, route.take(kept))
        print(f"wrote {args.output}")
    if args.report:
        payload = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "input": os.path.basename(args.input),
            "epsilon": args.epsilon,
            "qubit_budget": args.qubit_budget,
            "method": args.method,
            "seed": args.seed,
            "kept_indices": list(kept),
            "report": report.to_dict(),
        }
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.report}")
    if args.plot:
        from . import plots

        plots.plot_compression(route, kept, args.plot)
        print(f"wrote {args.plot}")
    if args.qaoa_dump:
        _dump_qaoa_segments(route, args, cfg)
    return 0


def _dump_qaoa_segments(route, args: argparse.Namespace, cfg: QaoaConfig) -> None:
    """Re-solve per segment, writing trace/histogram CSVs and trace PNGs."""
    from dataclasses import replace

    from . import plots
    from .hobo import build_hobo
    from .qaoa import write_expectation_trace_csv, write_samples_csv
    from .route_graph import build_candidate_graph, plan_segments
    from .solver import solve_qaoa

    if args.method != "qaoa":
        print("--qaoa-dump ignored: method is not qaoa", file=sys.stderr)
        return
    os.makedirs(args.qaoa_dump, exist_ok=True)
    g = build_candidate_graph(route, args.epsilon)
    plan = plan_segments(g, args.qubit_budget)
    for seg_index, (a, b) in enumerate(plan.ranges(g.n)):
        model = build_hobo(g.subgraph(a, b))
        if model.num_vars == 0:
            continue
        result = solve_qaoa(model, replace(cfg, seed=cfg.seed + seg_index))
        outcome = result.outcome
        if outcome is None:
            continue
        stem = os.path.join(args.qaoa_dump, f"segment_{seg_index:03d}")
        with open(f"{stem}_trace.csv", "w", encoding="utf-8") as fh:
            write_expectation_trace_csv(outcome.expectation_trace, fh)
        with open(f"{stem}_samples.csv", "w", encoding="utf-8") as fh:
            write_samples_csv(outcome.samples, fh)
        plots.plot_expectation_trace(outcome.expectation_trace, f"{stem}_trace.png")
    print(f"wrote QAOA dumps under {args.qaoa_dump}")


def _cmd_compare(args: argparse.Namespace) -> int:
    route = load_route(args.input)
    comparison = compare_methods(
        route, args.epsilon, args.qubit_budget, args.method, _qaoa_config(args)
    )
    print(render_comparison_table(comparison))
    if args.json:
        payload = {
            "schema_version": REPORT_SCHEMA_VERSION,
            "input": os.path.basename(args.input),
            "epsilon": args.epsilon,
            "method": args.method,
            "rdp": {
                "selected": comparison.rdp.selected,
                "dropped": comparison.rdp.dropped,
                "ratio": comparison.rdp.ratio,
            },
            "proposed": comparison.proposed.to_dict(),
            "selected_ratio": comparison.selected_ratio,
        }
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(f"wrote {args.json}")
    if args.plot:
        from . import plots

        plots.plot_route_comparison(
            route, comparison.rdp_kept, comparison.proposed_kept, args.plot
        )
        print(f"wrote {args.plot}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    route = load_route(args.input)
    epsilons = _parse_epsilons(args)
    normalize_mean = None
    if args.normalize_mean is not None:
        normalize_mean = args.normalize_mean
    elif args.normalize:
        normalize_mean = DEFAULT_NORMALIZE_MEAN
    rows = epsilon_sweep(
        route,
        epsilons,
        normalize_mean=normalize_mean,
        qubit_budget=args.qubit_budget,
        method=args.method,
        cfg=_qaoa_config(args),
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            write_sweep_csv(rows, fh)
        print(f"wrote {args.output}")
    else:
        buffer = io.StringIO()
        write_sweep_csv(rows, buffer)
        sys.stdout.write(buffer.getvalue())
    if args.plot:
        from . import plots

        plots.plot_sweep(rows, args.plot)
        print(f"wrote {args.plot}")
    return 0


_HANDLERS = {
    "stats": _cmd_stats,
    "rdp": _cmd_rdp,
    "compress": _cmd_compress,
    "compare": _cmd_compare,
    "sweep": _cmd_sweep,
}


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns 0 on success, 2 on usage errors, 1 on data errors."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
