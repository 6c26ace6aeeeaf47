"""Multilinear binary polynomials and the route-selection objectives built on them.

The higher-order objective assigns each vertex a binary edge code and charges
an edge's weight only when the walk actually reaches that vertex, via the
reachability recurrence: the term for edge (i, j) is (sum of terms entering
i) times the indicator that vertex i's bits select j. Codes that index past a
vertex's real fan-out are penalized with a large constant so minima always
decode to real paths.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .route_graph import CandidateGraph, Edge

__all__ = [
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
    "variable_offsets",
]

Monomial = tuple[int, ...]


def _mask_of(mono: Iterable[int]) -> int:
    mask = 0
    for v in mono:
        mask |= 1 << v
    return mask


def _mono_of(mask: int) -> Monomial:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


class BinaryPolynomial:
    """Sparse multilinear polynomial over binary variables.

    Terms map a sorted tuple of variable indices to a float coefficient; the
    empty tuple is the constant term. x_i^2 = x_i is applied on every
    multiplication, and zero coefficients are dropped. Monomials are stored
    as index bitmasks, which keeps products and exhaustive evaluation cheap
    even when expansions grow into millions of terms.
    """

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int, terms: Mapping[Monomial, float] | None = None):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.num_vars = num_vars
        self._terms: dict[int, float] = {}
        for mono, coeff in (terms or {}).items():
            if coeff == 0.0:
                continue
            if len(set(mono)) != len(mono) or tuple(sorted(mono)) != tuple(mono):
                raise ValueError(f"monomial {mono} must be sorted and repetition-free")
            if mono and (mono[0] < 0 or mono[-1] >= num_vars):
                raise ValueError(f"monomial {mono} outside 0..{num_vars - 1}")
            self._terms[_mask_of(mono)] = float(coeff)

    @classmethod
    def _from_masks(cls, num_vars: int, masked: dict[int, float]) -> "BinaryPolynomial":
        poly = object.__new__(cls)
        poly.num_vars = num_vars
        poly._terms = masked
        return poly

    @classmethod
    def constant(cls, value: float, num_vars: int) -> "BinaryPolynomial":
        return cls(num_vars, {(): value})

    @classmethod
    def variable(cls, index: int, num_vars: int) -> "BinaryPolynomial":
        return cls(num_vars, {(index,): 1.0})

    @property
    def terms(self) -> dict[Monomial, float]:
        """Tuple-keyed view of the terms (materialized on demand)."""
        return {_mono_of(mask): coeff for mask, coeff in self._terms.items()}

    def mask_items(self):
        """Fast internal iteration as (bitmask, coefficient) pairs."""
        return self._terms.items()

    def term_count(self) -> int:
        return len(self._terms)

    def degree(self) -> int:
        return max((mask.bit_count() for mask in self._terms), default=0)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BinaryPolynomial)
            and self.num_vars == other.num_vars
            and self._terms == other._terms
        )

    def __add__(self, other: "BinaryPolynomial | float") -> "BinaryPolynomial":
        if isinstance(other, (int, float)):
            other = BinaryPolynomial.constant(float(other), self.num_vars)
        if other.num_vars != self.num_vars:
            raise ValueError("polynomials must share a variable space")
        merged = dict(self._terms)
        for mask, coeff in other._terms.items():
            value = merged.get(mask, 0.0) + coeff
            if value == 0.0:
                merged.pop(mask, None)
            else:
                merged[mask] = value
        return BinaryPolynomial._from_masks(self.num_vars, merged)

    __radd__ = __add__

    def __sub__(self, other: "BinaryPolynomial | float") -> "BinaryPolynomial":
        return self + (other * -1.0 if isinstance(other, BinaryPolynomial) else -other)

    def __mul__(self, other: "BinaryPolynomial | float") -> "BinaryPolynomial":
        if isinstance(other, (int, float)):
            if other == 0:
                return BinaryPolynomial._from_masks(self.num_vars, {})
            return BinaryPolynomial._from_masks(
                self.num_vars, {m: c * other for m, c in self._terms.items()}
            )
        if other.num_vars != self.num_vars:
            raise ValueError("polynomials must share a variable space")
        product: dict[int, float] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                key = m1 | m2
                product[key] = product.get(key, 0.0) + c1 * c2
        return BinaryPolynomial._from_masks(
            self.num_vars, {m: c for m, c in product.items() if c != 0.0}
        )

    __rmul__ = __mul__

    def dump(self) -> str:
        """Stable text form: one term per line, sorted by (degree, indices)."""
        monos = sorted((_mono_of(mask) for mask in self._terms), key=lambda m: (len(m), m))
        lines = []
        for mono in monos:
            coeff = f"{self._terms[_mask_of(mono)]:.12g}"
            if mono:
                lines.append(f"{coeff} " + " ".join(f"x{v}" for v in mono))
            else:
                lines.append(coeff)
        return "\n".join(lines)


def evaluate(p: BinaryPolynomial, assignment: Sequence[int]) -> float:
    """Value of p at a 0/1 assignment: sum of coefficients whose variables are all 1."""
    if len(assignment) != p.num_vars:
        raise ValueError(
            f"assignment length {len(assignment)} != variable count {p.num_vars}"
        )
    set_bits = 0
    for k, bit in enumerate(assignment):
        if bit:
            set_bits |= 1 << k
    total = 0.0
    for mask, coeff in p.mask_items():
        if mask & set_bits == mask:
            total += coeff
    return total


def evaluate_all(p: BinaryPolynomial) -> np.ndarray:
    """Values of p over all 2**num_vars assignments.

    Bit i of the array index is variable i. Computed with the subset-sum
    transform, O(n * 2^n), so exhaustive minimization stays cheap.
    """
    values = np.zeros(1 << p.num_vars)
    for mask, coeff in p.mask_items():
        values[mask] += coeff
    for b in range(p.num_vars):
        block = values.reshape(-1, 2, 1 << b)
        block[:, 1, :] += block[:, 0, :]
    return values


def variable_offsets(g: CandidateGraph) -> tuple[int, ...]:
    """Start index of each vertex's code bits in the flat variable vector."""
    offsets = []
    acc = 0
    for width in g.bits:
        offsets.append(acc)
        acc += width
    return tuple(offsets)


def code_indicator(g: CandidateGraph, i: int, code: int) -> BinaryPolynomial:
    """Polynomial that is 1 exactly when vertex i's bits spell `code`, else 0.

    Bit k of the code is the variable at offset k within vertex i's block
    (least significant bit first); a 0-bit contributes a (1 - x) factor.
    """
    width = g.bits[i]
    if not (0 <= code < (1 << width) or (width == 0 and code == 0)):
        raise ValueError(f"code {code} out of range for {width} bits at vertex {i}")
    num_vars = sum(g.bits)
    base = variable_offsets(g)[i]
    poly = BinaryPolynomial.constant(1.0, num_vars)
    for k in range(width):
        x = BinaryPolynomial.variable(base + k, num_vars)
        poly = poly * (x if (code >> k) & 1 else BinaryPolynomial.constant(1.0, num_vars) - x)
    return poly


def default_penalty_weight(g: CandidateGraph) -> float:
    """Penalty scale strictly above any feasible objective: 2 * (total edge weight) + 1."""
    return 2.0 * sum(e.weight for e in g.edges) + 1.0


@dataclass(frozen=True)
class HoboModel:
    """Route-selection objective over a candidate graph's code bits.

    objective sums w_ij * h_ij over edges, where h_ij is the reachability
    term for edge (i, j); penalty holds one indicator per unused code per
    vertex. Solvers minimize objective + penalty_weight * penalty.
    """

    graph: CandidateGraph
    objective: BinaryPolynomial
    penalty: BinaryPolynomial
    penalty_weight: float
    offsets: tuple[int, ...]

    @property
    def num_vars(self) -> int:
        return self.objective.num_vars

    def var_of(self, vertex: int, bit: int) -> int:
        """Flat variable index of one code bit of a vertex."""
        if not (0 <= bit < self.graph.bits[vertex]):
            raise ValueError(f"vertex {vertex} has no bit {bit}")
        return self.offsets[vertex] + bit

    def vertex_code(self, assignment: Sequence[int], vertex: int) -> int:
        """Code spelled by a vertex's bits in the given assignment."""
        width = self.graph.bits[vertex]
        base = self.offsets[vertex]
        code = 0
        for k in range(width):
            if assignment[base + k]:
                code |= 1 << k
        return code

    def combined(self) -> BinaryPolynomial:
        """Full objective including weighted penalties."""
        return self.objective + self.penalty * self.penalty_weight


def build_hobo(g: CandidateGraph) -> HoboModel:
    """Expand the reachability recurrence into the full multilinear objective.

    A single forward pass in vertex order accumulates, per vertex, the sum of
    edge terms entering it; each outgoing edge multiplies that sum by its
    code indicator. The start vertex's reachability factor is the constant 1.
    Accumulation happens in shared mask dictionaries: expansions can run to
    millions of terms on dense graphs, so copy-on-add would be quadratic.
    """
    from collections import defaultdict

    num_vars = sum(g.bits)
    offsets = variable_offsets(g)
    reach: list[defaultdict[int, float]] = [defaultdict(float) for _ in range(g.n)]
    reach[0][0] = 1.0
    objective: defaultdict[int, float] = defaultdict(float)
    for i in range(g.n):
        source = reach[i]
        for code, edge in enumerate(g.forward[i]):
            ind_terms = list(code_indicator(g, i, code).mask_items())
            target = reach[edge.dst]
            weight = edge.weight
            for m1, c1 in source.items():
                for m2, c2 in ind_terms:
                    key = m1 | m2
                    c = c1 * c2
                    objective[key] += c * weight
                    target[key] += c

    penalty: defaultdict[int, float] = defaultdict(float)
    for i in range(g.n):
        if g.fanout(i) == 0:
            continue  # no outgoing edges means no code to constrain
        for unused in range(g.fanout(i), 1 << g.bits[i]):
            for mask, coeff in code_indicator(g, i, unused).mask_items():
                penalty[mask] += coeff

    return HoboModel(
        g,
        BinaryPolynomial._from_masks(
            num_vars, {m: c for m, c in objective.items() if c != 0.0}
        ),
        BinaryPolynomial._from_masks(
            num_vars, {m: c for m, c in penalty.items() if c != 0.0}
        ),
        default_penalty_weight(g),
        offsets,
    )


def build_qubo(
    g: CandidateGraph, lambda1: float | None = None, lambda2: float | None = None
) -> BinaryPolynomial:
    """Quadratic edge-variable formulation, mainly for variable-count comparison.

    One variable per edge (ordered as g.edges). Cost counts selected edges;
    the first soft constraint balances in/out degree at every interior
    vertex, the second forces exactly one edge out of the start and one into
    the end. Defaults for both multipliers are 2 * |E|, large enough to
    dominate the linear cost.
    """
    m = len(g.edges)
    if lambda1 is None:
        lambda1 = 2.0 * m
    if lambda2 is None:
        lambda2 = 2.0 * m
    index = {(e.src, e.dst): k for k, e in enumerate(g.edges)}
    zero = BinaryPolynomial(m)

    def var(e: Edge) -> BinaryPolynomial:
        return BinaryPolynomial.variable(index[(e.src, e.dst)], m)

    cost = zero
    for e in g.edges:
        cost = cost + var(e)

    balance = zero
    for j in range(1, g.n - 1):
        flow = zero
        for e in g.edges:
            if e.dst == j:
                flow = flow + var(e)
            elif e.src == j:
                flow = flow - var(e)
        balance = balance + flow * flow

    start = zero
    for e in g.forward[0]:
        start = start + var(e)
    start = start - 1.0
    finish = zero
    for e in g.edges:
        if e.dst == g.n - 1:
            finish = finish + var(e)
    finish = finish - 1.0
    terminals = start * start + finish * finish

    return cost + balance * lambda1 + terminals * lambda2


@dataclass(frozen=True)
class InvalidDecode:
    """Marker for an assignment whose walk hit a code with no matching edge."""

    vertex: int
    code: int


def decode_assignment(
    m: HoboModel, assignment: Sequence[int]
) -> list[Edge] | InvalidDecode:
    """Walk the graph from vertex 0, following each visited vertex's coded edge.

    Bits of vertices the walk never visits are ignored. Returns the edge list
    on success, or an InvalidDecode naming the first vertex whose code points
    past its fan-out.
    """
    if len(assignment) != m.num_vars:
        raise ValueError(
            f"assignment length {len(assignment)} != variable count {m.num_vars}"
        )
    g = m.graph
    path: list[Edge] = []
    i = 0
    while i < g.n - 1:
        code = m.vertex_code(assignment, i)
        if code >= g.fanout(i):
            return InvalidDecode(i, code)
        edge = g.forward[i][code]
        path.append(edge)
        i = edge.dst
    return path
