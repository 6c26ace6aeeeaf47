"""End-to-end compression: thin edges, split into segments, solve, and merge.

Also drives the RDP-vs-optimized comparisons and the epsilon sweeps used to
study how the two methods trade off as the deviation threshold grows.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field, replace
from typing import IO, NamedTuple, Sequence

from .geometry import Polyline, Segment, perpendicular_distance, scale_route
from .hobo import build_hobo
from .qaoa import DEFAULT_MAX_QUBITS, QaoaConfig
from .rdp import RdpStats, rdp_simplify
from .route_graph import (
    COMPUTATIONAL,
    THEORETICAL,
    CandidateGraph,
    build_candidate_graph,
    hobo_variable_count,
    plan_segments,
)
from .solver import EXACT_MAX_VARS, SolveResult, solve_exact, solve_qaoa

__all__ = [
    "DEFAULT_NORMALIZE_MEAN",
    "SegmentSolve",
    "CompressionReport",
    "MethodComparison",
    "SweepRow",
    "compress_route",
    "compare_methods",
    "epsilon_sweep",
    "render_comparison_table",
    "write_sweep_csv",
    "max_kept_deviation",
]

# Common point spacing that sweep normalization rescales routes to, so one
# epsilon grid is comparable across datasets recorded at different densities.
DEFAULT_NORMALIZE_MEAN = 0.000653

EXACT = "exact"
QAOA = "qaoa"


@dataclass(frozen=True)
class SegmentSolve:
    """How one vertex range was solved."""

    start: int
    end: int
    variable_count: int
    method: str
    fallback: bool


@dataclass
class CompressionReport:
    """Selected/dropped accounting with the three retained-point categories.

    Endpoints count as normal points, so the three categories partition the
    selected set. Segment entries record the solver actually used per range.
    """

    total_points: int
    selected_points: int
    dropped_points: int
    normal: int
    theoretical_div: int
    computational_div: int
    ratio: float
    segments: list[SegmentSolve] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "total_points": self.total_points,
            "selected_points": self.selected_points,
            "dropped_points": self.dropped_points,
            "normal": self.normal,
            "theoretical_div": self.theoretical_div,
            "computational_div": self.computational_div,
            "ratio": self.ratio,
            "segments": [
                {
                    "start": s.start,
                    "end": s.end,
                    "variable_count": s.variable_count,
                    "method": s.method,
                    "fallback": s.fallback,
                }
                for s in self.segments
            ],
        }


def _solve_segment(
    g: CandidateGraph, a: int, b: int, method: str, cfg: QaoaConfig, seg_index: int
) -> tuple[SolveResult, int]:
    sub = g.subgraph(a, b)
    nvars = hobo_variable_count(sub)
    # fail before the (potentially huge) expansion, with the solver's message
    if method == EXACT and nvars > EXACT_MAX_VARS:
        raise ValueError(
            f"exact solve budget exceeded: {nvars} variables > limit {EXACT_MAX_VARS}"
            " (set a qubit budget to split the route)"
        )
    if method == QAOA and nvars > DEFAULT_MAX_QUBITS:
        raise ValueError(
            f"problem too large for simulator: {nvars} qubits > limit {DEFAULT_MAX_QUBITS}"
            " (set a qubit budget to split the route)"
        )
    model = build_hobo(sub)
    if method == EXACT:
        result = solve_exact(model)
    elif method == QAOA:
        # One base seed shared across the run; offsetting by segment index
        # keeps segments decorrelated but the whole run reproducible.
        result = solve_qaoa(model, replace(cfg, seed=cfg.seed + seg_index))
    else:
        raise ValueError(f"unknown method {method!r}")
    return result, model.num_vars


def compress_route(
    route: Polyline,
    epsilon: float,
    qubit_budget: int | None = 12,
    method: str = EXACT,
    cfg: QaoaConfig | None = None,
    max_offset: int | None = None,
) -> tuple[tuple[int, ...], CompressionReport]:
    """Compress one route; returns kept original indices and the report.

    Builds the thinned candidate graph, cuts it at theoretical division
    points (plus budget cuts when qubit_budget is set), solves each segment
    with the requested method, and concatenates the per-segment paths;
    shared boundary vertices are counted once.
    """
    if cfg is None:
        cfg = QaoaConfig()
    g = build_candidate_graph(route, epsilon, max_offset)
    plan = plan_segments(g, qubit_budget)

    kept: set[int] = set()
    segments: list[SegmentSolve] = []
    for seg_index, (a, b) in enumerate(plan.ranges(g.n)):
        result, nvars = _solve_segment(g, a, b, method, cfg, seg_index)
        for edge in result.selected_edges:
            kept.add(a + edge.src)
            kept.add(a + edge.dst)
        segments.append(
            SegmentSolve(a, b, nvars, result.method, result.fallback)
        )

    kept_sorted = tuple(sorted(kept))
    boundary_kind = dict(zip(plan.boundaries, plan.kinds))
    theoretical = sum(
        1 for v in kept_sorted if boundary_kind.get(v) == THEORETICAL
    )
    computational = sum(
        1 for v in kept_sorted if boundary_kind.get(v) == COMPUTATIONAL
    )
    selected = len(kept_sorted)
    total = len(route)
    report = CompressionReport(
        total_points=total,
        selected_points=selected,
        dropped_points=total - selected,
        normal=selected - theoretical - computational,
        theoretical_div=theoretical,
        computational_div=computational,
        ratio=selected / total,
        segments=segments,
    )
    return kept_sorted, report


@dataclass
class MethodComparison:
    """Both methods run on identical input."""

    total_points: int
    rdp: RdpStats
    rdp_kept: tuple[int, ...]
    proposed: CompressionReport
    proposed_kept: tuple[int, ...]

    @property
    def selected_ratio(self) -> float:
        """Optimized selected count over RDP selected count (below 1 means better)."""
        return self.proposed.selected_points / self.rdp.selected


def compare_methods(
    route: Polyline,
    epsilon: float,
    qubit_budget: int | None = 12,
    method: str = EXACT,
    cfg: QaoaConfig | None = None,
    max_offset: int | None = None,
) -> MethodComparison:
    """Run RDP and the graph-optimization pipeline on the same route and epsilon."""
    rdp_result = rdp_simplify(route, epsilon)
    selected = len(rdp_result.kept_indices)
    n = len(route)
    kept, report = compress_route(route, epsilon, qubit_budget, method, cfg, max_offset)
    return MethodComparison(
        total_points=n,
        rdp=RdpStats(selected, n - selected, selected / n),
        rdp_kept=rdp_result.kept_indices,
        proposed=report,
        proposed_kept=kept,
    )


class SweepRow(NamedTuple):
    epsilon: float
    rdp_selected: int
    proposed_selected: int
    ratio: float


def epsilon_sweep(
    route: Polyline,
    epsilons: Sequence[float],
    normalize_mean: float | None = None,
    qubit_budget: int | None = 12,
    method: str = EXACT,
    cfg: QaoaConfig | None = None,
    max_offset: int | None = None,
) -> list[SweepRow]:
    """Compare both methods across thresholds, smallest epsilon first.

    normalize_mean, when given, rescales the route so its mean adjacent
    distance matches it before sweeping (pass DEFAULT_NORMALIZE_MEAN for the
    shared grid).
    """
    if not epsilons:
        raise ValueError("need at least one epsilon")
    if normalize_mean is not None:
        route = scale_route(route, normalize_mean)
    rows: list[SweepRow] = []
    for eps in sorted(epsilons):
        comparison = compare_methods(route, eps, qubit_budget, method, cfg, max_offset)
        rows.append(
            SweepRow(
                eps,
                comparison.rdp.selected,
                comparison.proposed.selected_points,
                comparison.selected_ratio,
            )
        )
    return rows


def _cell(count: int, total: int) -> str:
    return f"{count} ({100.0 * count / total:.2f}%)"


def render_comparison_table(cmp: MethodComparison) -> str:
    """Plain-text comparison table with per-category percentages (2 decimals)."""
    total = cmp.total_points
    report = cmp.proposed
    rows = [
        ("Total points", str(total), str(total)),
        ("Selected points", _cell(cmp.rdp.selected, total), _cell(report.selected_points, total)),
        ("  Normal", "-", _cell(report.normal, total)),
        ("  Theor. Div.", "-", _cell(report.theoretical_div, total)),
        ("  Comp. Div.", "-", _cell(report.computational_div, total)),
        ("Dropped points", _cell(cmp.rdp.dropped, total), _cell(report.dropped_points, total)),
    ]
    label_w = max(len(r[0]) for r in rows)
    rdp_w = max(len(r[1]) for r in rows + [("", "RDP", "")])
    lines = [f"{'':<{label_w}}  {'RDP':<{rdp_w}}  Proposed"]
    for label, rdp_cell, prop_cell in rows:
        lines.append(f"{label:<{label_w}}  {rdp_cell:<{rdp_w}}  {prop_cell}")
    return "\n".join(lines)


def write_sweep_csv(rows: Sequence[SweepRow], out: IO[str]) -> None:
    """Sweep table as CSV; formatting is fixed so identical runs are byte-identical."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["epsilon", "rdp_selected", "proposed_selected", "ratio"])
    for row in rows:
        writer.writerow(
            [f"{row.epsilon:.12g}", row.rdp_selected, row.proposed_selected, f"{row.ratio:.6f}"]
        )


def max_kept_deviation(route: Polyline, kept: Sequence[int]) -> float:
    """Largest distance from any dropped point to the kept chord spanning it.

    Post-hoc fidelity check: thinning guarantees this never exceeds the
    epsilon the compression ran with.
    """
    worst = 0.0
    for a, b in zip(kept, kept[1:]):
        chord = Segment(route[a], route[b])
        for k in range(a + 1, b):
            worst = max(worst, perpendicular_distance(route[k], chord))
    return worst
