"""Edge-thinned candidate DAG over route vertices, edge codes, and division planning.

Every vertex keeps its forward edges whose chord stays within epsilon of all
intermediate points; adjacent edges are always kept so the uncompressed path
remains feasible. Each vertex's surviving edges get a binary code (code 0 is
the nearest forward vertex), which is what the higher-order objective
optimizes over.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .geometry import Polyline, chord_offsets

__all__ = [
    "Edge",
    "CandidateGraph",
    "SegmentPlan",
    "THEORETICAL",
    "COMPUTATIONAL",
    "is_valid_edge",
    "build_candidate_graph",
    "hobo_variable_count",
    "qubo_variable_count",
    "find_theoretical_division_points",
    "plan_segments",
    "iter_paths",
    "count_paths",
]

THEORETICAL = "theoretical"
COMPUTATIONAL = "computational"


class Edge(NamedTuple):
    src: int
    dst: int
    weight: float = 1.0


def _code_width(fanout: int) -> int:
    """Bits needed to index `fanout` edges; 0 when the choice is forced or absent."""
    return 0 if fanout <= 1 else (fanout - 1).bit_length()


@dataclass(frozen=True)
class CandidateGraph:
    """Immutable forward DAG with per-vertex edge codes.

    forward[i] is sorted by target, so the code of forward[i][k] is k.
    bits[i] is the code width ceil(log2(e_i)) with the convention that a
    single (or no) outgoing edge needs 0 bits.
    """

    n: int
    edges: tuple[Edge, ...]
    forward: tuple[tuple[Edge, ...], ...]
    bits: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[Edge | tuple]) -> "CandidateGraph":
        """Build from an explicit edge set (weights default to 1.0).

        Validates the structural invariants: forward direction, positive
        weights, no duplicates, and at least one outgoing edge on every
        vertex but the last.
        """
        if n < 2:
            raise ValueError("graph needs at least 2 vertices")
        normalized: list[Edge] = []
        seen: set[tuple[int, int]] = set()
        for e in edges:
            edge = e if isinstance(e, Edge) else Edge(*e)
            if not (0 <= edge.src < edge.dst <= n - 1):
                raise ValueError(f"edge {edge.src}->{edge.dst} out of range or not forward")
            if edge.weight <= 0:
                raise ValueError(f"edge {edge.src}->{edge.dst} has non-positive weight")
            if (edge.src, edge.dst) in seen:
                raise ValueError(f"duplicate edge {edge.src}->{edge.dst}")
            seen.add((edge.src, edge.dst))
            normalized.append(edge)
        normalized.sort(key=lambda e: (e.src, e.dst))
        forward: list[list[Edge]] = [[] for _ in range(n)]
        for edge in normalized:
            forward[edge.src].append(edge)
        for i in range(n - 1):
            if not forward[i]:
                raise ValueError(f"vertex {i} has no outgoing edge; graph is disconnected")
        bits = tuple(_code_width(len(out)) for out in forward)
        return cls(n, tuple(normalized), tuple(tuple(out) for out in forward), bits)

    def fanout(self, i: int) -> int:
        return len(self.forward[i])

    def has_edge(self, i: int, j: int) -> bool:
        return any(e.dst == j for e in self.forward[i])

    def code_of(self, i: int, j: int) -> int:
        """Code assigned to edge (i, j) within vertex i's forward list."""
        for k, e in enumerate(self.forward[i]):
            if e.dst == j:
                return k
        raise KeyError(f"no edge {i}->{j}")

    def subgraph(self, a: int, b: int) -> "CandidateGraph":
        """Induced graph on vertices a..b, reindexed to 0..b-a."""
        if not (0 <= a < b <= self.n - 1):
            raise ValueError(f"bad vertex range [{a}, {b}]")
        sub = [
            Edge(e.src - a, e.dst - a, e.weight)
            for e in self.edges
            if a <= e.src and e.dst <= b
        ]
        return CandidateGraph.from_edges(b - a + 1, sub)


def is_valid_edge(route: Polyline, i: int, j: int, epsilon: float) -> bool:
    """True iff every point strictly between i and j lies within epsilon of the chord (i, j)."""
    n = len(route)
    if not (0 <= i < j <= n - 1):
        raise ValueError(f"edge indices ({i}, {j}) out of range for {n} points")
    if j == i + 1:
        return True
    offsets = chord_offsets(route.as_array(), i, j)
    return bool(offsets.max() <= epsilon)


def build_candidate_graph(
    route: Polyline, epsilon: float, max_offset: int | None = None
) -> CandidateGraph:
    """Thin all forward chords of the route against epsilon.

    Args:
        route: input polyline, at least 2 points.
        epsilon: chord deviation threshold (same units as the coordinates).
        max_offset: optional cap on j - i, bounding the O(n^2) candidate set
            on long routes; None examines every forward pair.

    Adjacent edges are included unconditionally, so the result always
    contains the uncompressed start-to-end path. All weights are 1.0.
    """
    n = len(route)
    if n < 2:
        raise ValueError("route too short: need at least 2 points")
    if epsilon < 0:
        raise ValueError("negative threshold")
    if max_offset is not None and max_offset < 1:
        raise ValueError("max_offset must be at least 1")
    coords = route.as_array()
    edges: list[Edge] = []
    for i in range(n - 1):
        edges.append(Edge(i, i + 1))
        far = n - 1 if max_offset is None else min(n - 1, i + max_offset)
        for j in range(i + 2, far + 1):
            if chord_offsets(coords, i, j).max() <= epsilon:
                edges.append(Edge(i, j))
    return CandidateGraph.from_edges(n, edges)


def hobo_variable_count(g: CandidateGraph) -> int:
    """Total code bits: sum over vertices of ceil(log2 e_i)."""
    return sum(g.bits)


def qubo_variable_count(g: CandidateGraph) -> int:
    """One binary variable per edge."""
    return len(g.edges)


def find_theoretical_division_points(g: CandidateGraph) -> list[int]:
    """Interior vertices spanned by no edge; every start-to-end path passes them.

    Splitting at these vertices is lossless, so the optimization can run per
    segment and the results concatenated.
    """
    spanned = np.zeros(g.n, dtype=bool)
    for e in g.edges:
        if e.dst - e.src >= 2:
            spanned[e.src + 1 : e.dst] = True
    return [v for v in range(1, g.n - 1) if not spanned[v]]


@dataclass(frozen=True)
class SegmentPlan:
    """Sorted cut vertices plus, per cut, whether it is structural or budget-driven."""

    boundaries: tuple[int, ...]
    kinds: tuple[str, ...]

    def kind_of(self, vertex: int) -> str:
        return self.kinds[self.boundaries.index(vertex)]

    def ranges(self, n: int) -> list[tuple[int, int]]:
        """Contiguous (start, end) vertex ranges covering 0..n-1."""
        stops = [0, *self.boundaries, n - 1]
        return [(stops[k], stops[k + 1]) for k in range(len(stops) - 1)]


def _segment_cuts(g: CandidateGraph, a: int, b: int, budget: int) -> list[int]:
    """Greedy left-to-right cuts so every sub-range of [a, b] fits the variable budget."""
    incoming: list[list[int]] = [[] for _ in range(g.n)]
    for e in g.edges:
        incoming[e.dst].append(e.src)

    cuts: list[int] = []
    start = a
    while start < b:
        fanout = [0] * (b - start + 1)
        total = 0
        best = start + 1  # a single step is always 0 variables
        for c in range(start + 1, b + 1):
            for src in incoming[c]:
                if src >= start:
                    k = src - start
                    total -= _code_width(fanout[k])
                    fanout[k] += 1
                    total += _code_width(fanout[k])
            if total <= budget:
                best = c
            else:
                break  # variable count only grows with the range
        if best == b:
            break
        cuts.append(best)
        start = best
    return cuts


def plan_segments(g: CandidateGraph, qubit_budget: int | None) -> SegmentPlan:
    """Cut at every theoretical division point, then add budget cuts where needed.

    Within each structural segment whose variable count exceeds the budget,
    cuts are inserted greedily left to right at the farthest vertex that
    keeps the sub-segment within budget. qubit_budget=None skips budget cuts
    entirely.
    """
    if qubit_budget is not None:
        if qubit_budget < 1:
            raise ValueError("qubit budget must be at least 1")
        worst = max(g.bits)
        if worst > qubit_budget:
            raise ValueError(
                f"budget too small for vertex fan-out: a vertex needs {worst} bits"
            )
    theoretical = find_theoretical_division_points(g)
    cuts: list[tuple[int, str]] = [(v, THEORETICAL) for v in theoretical]
    if qubit_budget is not None:
        stops = [0, *theoretical, g.n - 1]
        for k in range(len(stops) - 1):
            for v in _segment_cuts(g, stops[k], stops[k + 1], qubit_budget):
                cuts.append((v, COMPUTATIONAL))
    cuts.sort()
    return SegmentPlan(
        tuple(v for v, _ in cuts),
        tuple(kind for _, kind in cuts),
    )


def iter_paths(g: CandidateGraph) -> Iterator[tuple[int, ...]]:
    """All start-to-end vertex paths, depth-first in code order."""
    target = g.n - 1
    stack: list[tuple[int, ...]] = [(0,)]
    while stack:
        path = stack.pop()
        v = path[-1]
        if v == target:
            yield path
            continue
        for e in reversed(g.forward[v]):
            stack.append(path + (e.dst,))


def count_paths(g: CandidateGraph) -> int:
    """Number of distinct start-to-end paths (dynamic program over vertex order)."""
    counts = [0] * g.n
    counts[0] = 1
    for i in range(g.n):
        if counts[i]:
            for e in g.forward[i]:
                counts[e.dst] += counts[i]
    return counts[g.n - 1]
