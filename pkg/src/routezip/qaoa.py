"""Desk-scale QAOA on a statevector simulator.

The cost Hamiltonian is diagonal, so a cost layer is a per-basis phase
multiplication rather than synthesized gates; the mixer is the standard
transverse-field X rotation applied per qubit. Parameters are tuned with a
seeded, restarted Nelder-Mead search, and measurement sampling uses numpy's
PCG64 generator so every outcome is reproducible bit for bit from the seed.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import IO, Sequence

import numpy as np
from scipy.optimize import minimize

from .ising import IsingHamiltonian, basis_energies

__all__ = [
    "DEFAULT_MAX_QUBITS",
    "Statevector",
    "QaoaConfig",
    "QaoaOutcome",
    "apply_cost_layer",
    "apply_mixer_layer",
    "expectation",
    "run_qaoa",
    "sample_distribution",
    "write_expectation_trace_csv",
    "write_samples_csv",
]

# 2^22 complex amplitudes; beyond this a dense statevector stops being a
# desk-scale object.
DEFAULT_MAX_QUBITS = 22

# Seed-sequence stream tags keeping restart starts and measurement sampling
# decoupled: either can change without perturbing the other.
_RESTART_STREAM = 1
_SAMPLE_STREAM = 2

Bits = tuple[int, ...]


@dataclass(frozen=True)
class Statevector:
    """Dense amplitude vector over n qubits; index bit q is qubit q's bit."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        size = self.amplitudes.shape[0]
        if self.amplitudes.ndim != 1 or size & (size - 1):
            raise ValueError("amplitude vector length must be a power of two")

    @property
    def n(self) -> int:
        return int(self.amplitudes.shape[0]).bit_length() - 1

    @classmethod
    def uniform(cls, n: int) -> "Statevector":
        """Equal superposition of all basis states (Hadamard on every qubit)."""
        size = 1 << n
        return cls(np.full(size, 1.0 / math.sqrt(size), dtype=complex))

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


def apply_cost_layer(
    sv: Statevector, h: IsingHamiltonian, gamma: float
) -> Statevector:
    """Multiply each basis amplitude by exp(-i * gamma * energy); diagonal, norm-preserving."""
    if h.num_qubits != sv.n:
        raise ValueError(f"Hamiltonian on {h.num_qubits} qubits, state on {sv.n}")
    return _phase_layer(sv, basis_energies(h), gamma)


def _phase_layer(sv: Statevector, energies: np.ndarray, gamma: float) -> Statevector:
    return Statevector(sv.amplitudes * np.exp(-1j * gamma * energies))


def apply_mixer_layer(sv: Statevector, beta: float) -> Statevector:
    """Apply exp(-i * beta * X) on every qubit (transverse-field mixer)."""
    amp = sv.amplitudes.copy()
    c = math.cos(beta)
    s = -1j * math.sin(beta)
    for q in range(sv.n):
        block = amp.reshape(-1, 2, 1 << q)
        top = block[:, 0, :].copy()
        bottom = block[:, 1, :].copy()
        block[:, 0, :] = c * top + s * bottom
        block[:, 1, :] = s * top + c * bottom
    return Statevector(amp)


def expectation(sv: Statevector, h: IsingHamiltonian) -> float:
    """<psi| H |psi> for a diagonal H: probability-weighted basis energies."""
    if h.num_qubits != sv.n:
        raise ValueError(f"Hamiltonian on {h.num_qubits} qubits, state on {sv.n}")
    return float(sv.probabilities() @ basis_energies(h))


def sample_distribution(sv: Statevector, shots: int, seed: int) -> dict[Bits, int]:
    """Multinomial draw of `shots` measurements; identical for identical seeds."""
    if shots < 1:
        raise ValueError("shots must be at least 1")
    probs = sv.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, probs)
    n = sv.n
    return {
        _index_bits(int(idx), n): int(counts[idx]) for idx in np.flatnonzero(counts)
    }


def _index_bits(index: int, n: int) -> Bits:
    return tuple((index >> q) & 1 for q in range(n))


@dataclass(frozen=True)
class QaoaConfig:
    """Knobs for one QAOA solve.

    reps is the layer count p (2p angles overall). optimizer_max_iters bounds
    objective evaluations per restart; restarts beyond the first start from
    seeded random angles in (0, pi). initial_params, when given, replaces the
    first restart's starting angles (gamma_1..gamma_p, beta_1..beta_p).
    """

    reps: int = 2
    shots: int = 4096
    seed: int = 1234
    optimizer_max_iters: int = 400
    optimizer_restarts: int = 4
    initial_params: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if self.shots < 1:
            raise ValueError("shots must be at least 1")
        if self.optimizer_restarts < 1:
            raise ValueError("need at least one optimizer start")
        if self.initial_params is not None and len(self.initial_params) != 2 * self.reps:
            raise ValueError(f"initial_params must hold {2 * self.reps} angles")


@dataclass
class QaoaOutcome:
    """Result of one QAOA solve.

    expectation_trace holds the objective at every optimizer evaluation, in
    order, across all restarts; samples maps measured bit tuples (qubit 0
    first) to shot counts.
    """

    best_params: tuple[float, ...]
    best_expectation: float
    expectation_trace: list[float] = field(default_factory=list)
    samples: dict[Bits, int] = field(default_factory=dict)


def _starting_points(cfg: QaoaConfig) -> list[np.ndarray]:
    """First start warm (pi/4 angles or the caller's), the rest seeded random."""
    dim = 2 * cfg.reps
    if cfg.initial_params is not None:
        first = np.asarray(cfg.initial_params, dtype=float)
    else:
        first = np.full(dim, math.pi / 4)
    starts = [first]
    for r in range(1, cfg.optimizer_restarts):
        rng = np.random.default_rng([cfg.seed, _RESTART_STREAM, r])
        starts.append(rng.uniform(0.05 * math.pi, 0.95 * math.pi, dim))
    return starts


def run_qaoa(
    h: IsingHamiltonian, cfg: QaoaConfig, max_qubits: int = DEFAULT_MAX_QUBITS
) -> QaoaOutcome:
    """Optimize the 2p angles against <H> and sample the best state.

    Starts from the uniform superposition and alternates cost and mixer
    layers p times. The returned outcome is fully determined by (h, cfg):
    Nelder-Mead is deterministic given its start, all randomness flows
    through seeded PCG64 streams, and amplitude arithmetic has a fixed
    accumulation order.
    """
    n = h.num_qubits
    if n > max_qubits:
        raise ValueError(
            f"problem too large for simulator: {n} qubits > limit {max_qubits}"
        )
    energies = basis_energies(h)
    p = cfg.reps

    def prepare(params: np.ndarray) -> Statevector:
        sv = Statevector.uniform(n)
        for layer in range(p):
            sv = _phase_layer(sv, energies, float(params[layer]))
            sv = apply_mixer_layer(sv, float(params[p + layer]))
        return sv

    trace: list[float] = []

    def objective(params: np.ndarray) -> float:
        value = float(prepare(params).probabilities() @ energies)
        trace.append(value)
        return value

    best_params: np.ndarray | None = None
    best_value = math.inf
    for start in _starting_points(cfg):
        result = minimize(
            objective,
            start,
            method="Nelder-Mead",
            options={"maxfev": cfg.optimizer_max_iters, "xatol": 1e-5, "fatol": 1e-12},
        )
        if result.fun < best_value:
            best_value = float(result.fun)
            best_params = np.asarray(result.x, dtype=float)
    assert best_params is not None

    final = prepare(best_params)
    samples = _sample_with_stream(final, cfg.shots, cfg.seed)
    return QaoaOutcome(
        best_params=tuple(float(v) for v in best_params),
        best_expectation=best_value,
        expectation_trace=trace,
        samples=samples,
    )


def _sample_with_stream(sv: Statevector, shots: int, seed: int) -> dict[Bits, int]:
    probs = sv.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng([seed, _SAMPLE_STREAM])
    counts = rng.multinomial(shots, probs)
    return {
        _index_bits(int(idx), sv.n): int(counts[idx]) for idx in np.flatnonzero(counts)
    }


def write_expectation_trace_csv(trace: Sequence[float], out: IO[str]) -> None:
    """Dump one (iteration, expectation) row per optimizer evaluation."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["iteration", "expectation"])
    for i, value in enumerate(trace):
        writer.writerow([i, f"{value:.12g}"])


def write_samples_csv(samples: dict[Bits, int], out: IO[str]) -> None:
    """Dump the measurement histogram; bitstring column is qubit 0 first."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["bitstring", "count"])
    for bits in sorted(samples):
        writer.writerow(["".join(str(b) for b in bits), samples[bits]])
