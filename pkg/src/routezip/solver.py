"""Exact and QAOA-backed minimization of a route-selection model.

The exact solver enumerates every assignment of the full objective and is
the verification oracle for everything else; the QAOA solver decodes sampled
assignments and keeps the cheapest valid path, falling back to the exact
solver if no sample decodes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hobo import HoboModel, InvalidDecode, decode_assignment, evaluate_all
from .ising import lower_to_ising
from .qaoa import QaoaConfig, QaoaOutcome, run_qaoa
from .route_graph import Edge

__all__ = ["EXACT_MAX_VARS", "SolveResult", "solve_exact", "solve_qaoa"]

# 2^24 assignment evaluations keeps the oracle well under a minute.
EXACT_MAX_VARS = 24

Bits = tuple[int, ...]


@dataclass(frozen=True)
class SolveResult:
    """A valid minimum-cost path plus how it was found.

    best_cost is the sum of selected edge weights. optimal_assignments is
    populated by the exact solver only and lists every assignment attaining
    the global minimum, lexicographically sorted. fallback marks a QAOA solve
    that had to defer to the exact solver.
    """

    method: str
    best_assignment: Bits
    best_cost: float
    selected_edges: tuple[Edge, ...]
    optimal_assignments: tuple[Bits, ...] = ()
    fallback: bool = False
    outcome: QaoaOutcome | None = None


def _index_bits(index: int, n: int) -> Bits:
    return tuple((index >> k) & 1 for k in range(n))


def solve_exact(m: HoboModel) -> SolveResult:
    """Global minimum of the full objective over every assignment.

    Collects all optimal assignments and returns the lexicographically
    smallest one whose decode is a valid path (at a true optimum the penalty
    never fires, so every optimum decodes).
    """
    nv = m.num_vars
    if nv > EXACT_MAX_VARS:
        raise ValueError(
            f"exact solve budget exceeded: {nv} variables > limit {EXACT_MAX_VARS}"
        )
    values = evaluate_all(m.combined())
    best = float(values.min())
    optima = sorted(_index_bits(int(i), nv) for i in np.flatnonzero(values == best))
    chosen: Bits | None = None
    edges: list[Edge] | None = None
    for assignment in optima:
        decoded = decode_assignment(m, assignment)
        if not isinstance(decoded, InvalidDecode):
            chosen = assignment
            edges = decoded
            break
    if chosen is None or edges is None:
        raise RuntimeError("no optimal assignment decodes to a path; model is inconsistent")
    return SolveResult(
        method="exact",
        best_assignment=chosen,
        best_cost=best,
        selected_edges=tuple(edges),
        optimal_assignments=tuple(optima),
    )


def solve_qaoa(m: HoboModel, cfg: QaoaConfig) -> SolveResult:
    """Best valid path among QAOA samples (ties to the smallest assignment).

    Models with no variables have a forced path and skip the simulator.
    When not a single sample decodes to a path, the exact result is returned
    with the fallback flag set so reports can surface it.
    """
    if m.num_vars == 0:
        return solve_exact(m)
    hamiltonian = lower_to_ising(m.combined())
    outcome = run_qaoa(hamiltonian, cfg)
    best: tuple[float, Bits, list[Edge]] | None = None
    for bits in sorted(outcome.samples):
        decoded = decode_assignment(m, bits)
        if isinstance(decoded, InvalidDecode):
            continue
        cost = sum(e.weight for e in decoded)
        if best is None or cost < best[0]:
            best = (cost, bits, decoded)
    if best is None:
        exact = solve_exact(m)
        return SolveResult(
            method="exact",
            best_assignment=exact.best_assignment,
            best_cost=exact.best_cost,
            selected_edges=exact.selected_edges,
            optimal_assignments=exact.optimal_assignments,
            fallback=True,
            outcome=outcome,
        )
    cost, bits, edges = best
    return SolveResult(
        method="qaoa",
        best_assignment=bits,
        best_cost=cost,
        selected_edges=tuple(edges),
        outcome=outcome,
    )
