from routezip.pipeline import SweepRow, compare_methods
from routezip.plots import (
    plot_compression,
    plot_expectation_trace,
    plot_route_comparison,
    plot_sweep,
)

from conftest import random_walk_route


def test_compression_plot_written(tmp_path):
    route = random_walk_route(20, seed=1)
    path = tmp_path / "comp.png"
    plot_compression(route, [0, 5, 10, 19], str(path))
    assert path.stat().st_size > 0


def test_comparison_plot_written(tmp_path):
    route = random_walk_route(20, seed=2)
    cmp = compare_methods(route, 0.5, qubit_budget=8)
    path = tmp_path / "cmp.png"
    plot_route_comparison(route, cmp.rdp_kept, cmp.proposed_kept, str(path))
    assert path.stat().st_size > 0


def test_sweep_plot_written(tmp_path):
    rows = [SweepRow(0.1, 20, 20, 1.0), SweepRow(0.2, 15, 12, 0.8), SweepRow(0.4, 6, 7, 7 / 6)]
    path = tmp_path / "sweep.png"
    plot_sweep(rows, str(path))
    assert path.stat().st_size > 0


def test_trace_plot_written(tmp_path):
    path = tmp_path / "trace.png"
    plot_expectation_trace([3.0, 2.5, 2.2, 2.4, 2.1], str(path))
    assert path.stat().st_size > 0
