"""Route compression toolkit.

Compresses GPS polylines two ways: the classical recursive RDP simplifier,
and a candidate-graph formulation where surviving forward chords get binary
edge codes and a minimum-cost path is found either exactly or with a
simulated QAOA. The pipeline splits long routes at theoretical (structural)
and computational (budget) division points and reports the three retained
point categories.
"""

from .geometry import (
    Point,
    Polyline,
    Segment,
    mean_adjacent_distance,
    perpendicular_distance,
    scale_route,
)
from .hobo import (
    BinaryPolynomial,
    HoboModel,
    InvalidDecode,
    build_hobo,
    build_qubo,
    code_indicator,
    decode_assignment,
    default_penalty_weight,
    evaluate,
    evaluate_all,
)
from .ising import (
    IsingHamiltonian,
    PauliZTerm,
    basis_energies,
    energy,
    fibonacci_path_count,
    lower_to_ising,
    term_count_by_degree,
)
from .pipeline import (
    DEFAULT_NORMALIZE_MEAN,
    CompressionReport,
    MethodComparison,
    SweepRow,
    compare_methods,
    compress_route,
    epsilon_sweep,
    render_comparison_table,
)
from .qaoa import (
    QaoaConfig,
    QaoaOutcome,
    Statevector,
    apply_cost_layer,
    apply_mixer_layer,
    expectation,
    run_qaoa,
    sample_distribution,
)
from .rdp import RdpResult, RdpStats, rdp_compression_stats, rdp_simplify
from .route_graph import (
    CandidateGraph,
    Edge,
    SegmentPlan,
    build_candidate_graph,
    find_theoretical_division_points,
    hobo_variable_count,
    is_valid_edge,
    plan_segments,
    qubo_variable_count,
)
from .solver import SolveResult, solve_exact, solve_qaoa
from .tracks import RouteFile, parse_csv, parse_gpx, write_csv, write_gpx

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "Point",
    "Polyline",
    "Segment",
    "perpendicular_distance",
    "mean_adjacent_distance",
    "scale_route",
    "RdpResult",
    "RdpStats",
    "rdp_simplify",
    "rdp_compression_stats",
    "Edge",
    "CandidateGraph",
    "SegmentPlan",
    "is_valid_edge",
    "build_candidate_graph",
    "hobo_variable_count",
    "qubo_variable_count",
    "find_theoretical_division_points",
    "plan_segments",
    "BinaryPolynomial",
    "HoboModel",
    "InvalidDecode",
    "code_indicator",
    "build_hobo",
    "build_qubo",
    "evaluate",
    "evaluate_all",
    "default_penalty_weight",
    "decode_assignment",
    "PauliZTerm",
    "IsingHamiltonian",
    "lower_to_ising",
    "energy",
    "basis_energies",
    "term_count_by_degree",
    "fibonacci_path_count",
    "Statevector",
    "QaoaConfig",
    "QaoaOutcome",
    "apply_cost_layer",
    "apply_mixer_layer",
    "expectation",
    "run_qaoa",
    "sample_distribution",
    "SolveResult",
    "solve_exact",
    "solve_qaoa",
    "CompressionReport",
    "MethodComparison",
    "SweepRow",
    "DEFAULT_NORMALIZE_MEAN",
    "compress_route",
    "compare_methods",
    "epsilon_sweep",
    "render_comparison_table",
    "RouteFile",
    "parse_gpx",
    "parse_csv",
    "write_gpx",
    "write_csv",
]
