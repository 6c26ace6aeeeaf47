"""Lowering of binary polynomials to diagonal Pauli-Z Hamiltonians.

Each binary variable is substituted by (1 - Z)/2, so a bit value of 1
corresponds to the Z eigenvalue -1. That sign convention is easy to get
backwards; it is fixed here once and everything downstream (energies,
sampling, decoding) relies on it.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Sequence

import numpy as np

from .hobo import BinaryPolynomial

__all__ = [
    "PauliZTerm",
    "IsingHamiltonian",
    "lower_to_ising",
    "energy",
    "basis_energies",
    "term_count_by_degree",
    "fibonacci_path_count",
]

# Expansion residue below this is genuine cancellation noise, not signal:
# exact inputs produce dyadic rationals well above it.
COEFF_CUTOFF = 1e-12


class PauliZTerm(NamedTuple):
    qubits: tuple[int, ...]
    coefficient: float


@dataclass(frozen=True)
class IsingHamiltonian:
    """Diagonal Hamiltonian: a merged, sorted list of Pauli-Z product terms."""

    num_qubits: int
    terms: tuple[PauliZTerm, ...]

    def dump(self) -> str:
        """Stable text form mirroring BinaryPolynomial.dump, with Z labels."""
        lines = []
        for term in self.terms:
            coeff = f"{term.coefficient:.12g}"
            if term.qubits:
                lines.append(f"{coeff} " + " ".join(f"Z{q}" for q in term.qubits))
            else:
                lines.append(coeff)
        return "\n".join(lines)


def _merged(num_qubits: int, raw: dict[tuple[int, ...], float]) -> IsingHamiltonian:
    terms = tuple(
        PauliZTerm(qubits, coeff)
        for qubits, coeff in sorted(raw.items(), key=lambda kv: (len(kv[0]), kv[0]))
        if abs(coeff) >= COEFF_CUTOFF
    )
    return IsingHamiltonian(num_qubits, terms)


def lower_to_ising(p: BinaryPolynomial) -> IsingHamiltonian:
    """Substitute x_i -> (1 - Z_i)/2 into every monomial and expand.

    The product over a monomial of size k spreads c/2^k over all subsets of
    its qubits with alternating sign, so energies of the result match the
    polynomial's values exactly on every basis state.
    """
    acc: dict[tuple[int, ...], float] = {}
    for mono, coeff in p.terms.items():
        scale = coeff / (1 << len(mono))
        for r in range(len(mono) + 1):
            sign = -scale if r & 1 else scale
            for subset in combinations(mono, r):
                acc[subset] = acc.get(subset, 0.0) + sign
    return _merged(p.num_vars, acc)


def energy(h: IsingHamiltonian, basis_state: Sequence[int]) -> float:
    """Eigenvalue of h on one computational basis state (bit 1 means Z = -1)."""
    if len(basis_state) != h.num_qubits:
        raise ValueError(
            f"state length {len(basis_state)} != qubit count {h.num_qubits}"
        )
    total = 0.0
    for qubits, coeff in h.terms:
        parity = 0
        for q in qubits:
            parity ^= 1 if basis_state[q] else 0
        total += -coeff if parity else coeff
    return total


def basis_energies(h: IsingHamiltonian) -> np.ndarray:
    """Energies of all 2**n basis states; bit q of the index is qubit q's bit.

    Computed as an unnormalized Walsh-Hadamard transform of the coefficient
    vector, O(n * 2^n), which is what the cost layer and the exact solver
    consume.
    """
    values = np.zeros(1 << h.num_qubits)
    for qubits, coeff in h.terms:
        mask = 0
        for q in qubits:
            mask |= 1 << q
        values[mask] += coeff
    for b in range(h.num_qubits):
        block = values.reshape(-1, 2, 1 << b)
        top = block[:, 0, :].copy()
        block[:, 0, :] = top + block[:, 1, :]
        block[:, 1, :] = top - block[:, 1, :]
    return values


def term_count_by_degree(h: IsingHamiltonian) -> dict[int, int]:
    """How many terms act on 0, 1, 2, ... qubits; the proxy for phase-layer depth."""
    return dict(sorted(Counter(len(t.qubits) for t in h.terms).items()))


def fibonacci_path_count(i: int) -> int:
    """Number of start-to-i paths on a chain allowing single-vertex skips.

    Satisfies C_i = C_{i-1} + C_{i-2} with C_0 = C_1 = 1, i.e. the Fibonacci
    numbers; used to predict how term counts and phase-layer depth scale
    with route length.
    """
    if i < 0:
        raise ValueError("index must be non-negative")
    a, b = 1, 1
    for _ in range(i):
        a, b = b, a + b
    return a
