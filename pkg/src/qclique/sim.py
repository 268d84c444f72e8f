"""Dense statevector execution of circuits, measurement sampling and histograms.

Basis-state index bit ``i`` is qubit ``i`` (qubit 0 least significant).
Display strings print qubit ``n-1`` leftmost, so the node set {1,2,3,4} on six
qubits reads ``011110``.  Multi-controlled gates are applied natively; no
decomposition is needed for simulation.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import Circuit, Gate


@dataclass
class StateVector:
    """``2**n_qubits`` complex amplitudes; index bit i corresponds to qubit i."""

    n_qubits: int
    amplitudes: np.ndarray

    @classmethod
    def zero(cls, n_qubits: int) -> StateVector:
        amp = np.zeros(1 << n_qubits, dtype=np.complex128)
        amp[0] = 1.0
        return cls(n_qubits, amp)

    @classmethod
    def basis(cls, n_qubits: int, index: int) -> StateVector:
        amp = np.zeros(1 << n_qubits, dtype=np.complex128)
        amp[index] = 1.0
        return cls(n_qubits, amp)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@lru_cache(maxsize=4)
def _indices(n_qubits: int) -> np.ndarray:
    return np.arange(1 << n_qubits, dtype=np.int64)


def _u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array(
        [[c, -np.exp(1j * lam) * s],
         [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c]],
        dtype=np.complex128,
    )


_H_MATRIX = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2.0)


def _gate_matrix_2x2(gate: Gate) -> np.ndarray:
    if gate.kind == "H":
        return _H_MATRIX
    if gate.kind in ("RY", "CRY", "CCRY"):
        return _u3_matrix(gate.params[0], 0.0, 0.0)
    if gate.kind == "U3":
        return _u3_matrix(*gate.params)
    if gate.kind == "U2":
        return _u3_matrix(math.pi / 2.0, *gate.params)
    raise ValueError(f"no 2x2 matrix for {gate.kind}")  # pragma: no cover


def _control_mask(controls: tuple[int, ...]) -> int:
    mask = 0
    for c in controls:
        mask |= 1 << c
    return mask


def _apply_swap(amp: np.ndarray, n: int, controls: tuple[int, ...], target: int) -> None:
    tbit = 1 << target
    if not controls:
        view = amp.reshape(-1, 2, tbit)
        tmp = view[:, 0, :].copy()
        view[:, 0, :] = view[:, 1, :]
        view[:, 1, :] = tmp
        return
    idx = _indices(n)
    cmask = _control_mask(controls)
    i0 = idx[((idx & cmask) == cmask) & ((idx & tbit) == 0)]
    i1 = i0 | tbit
    tmp = amp[i0].copy()
    amp[i0] = amp[i1]
    amp[i1] = tmp


def _apply_phase_flip(amp: np.ndarray, n: int, qubits: tuple[int, ...]) -> None:
    if len(qubits) == 1:
        view = amp.reshape(-1, 2, 1 << qubits[0])
        view[:, 1, :] *= -1.0
        return
    idx = _indices(n)
    mask = _control_mask(qubits)
    amp[(idx & mask) == mask] *= -1.0


def _apply_2x2(amp: np.ndarray, n: int, controls: tuple[int, ...], target: int,
               m: np.ndarray) -> None:
    tbit = 1 << target
    if not controls:
        view = amp.reshape(-1, 2, tbit)
        a0 = view[:, 0, :].copy()
        a1 = view[:, 1, :]
        view[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
        view[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1
        return
    idx = _indices(n)
    cmask = _control_mask(controls)
    i0 = idx[((idx & cmask) == cmask) & ((idx & tbit) == 0)]
    i1 = i0 | tbit
    a0 = amp[i0]
    a1 = amp[i1]
    amp[i0] = m[0, 0] * a0 + m[0, 1] * a1
    amp[i1] = m[1, 0] * a0 + m[1, 1] * a1


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate in place (exact unitary action) and return the state."""
    if max(gate.qubits) >= state.n_qubits:
        raise ValueError(f"gate {gate} exceeds state width {state.n_qubits}")
    amp, n = state.amplitudes, state.n_qubits
    kind = gate.kind
    if kind in ("X", "CX", "CCX", "MCX"):
        _apply_swap(amp, n, gate.qubits[:-1], gate.qubits[-1])
    elif kind in ("Z", "CZ", "MCZ"):
        _apply_phase_flip(amp, n, gate.qubits)
    else:
        _apply_2x2(amp, n, gate.controls, gate.target, _gate_matrix_2x2(gate))
    return state


def statevector(circuit: Circuit, initial: int = 0) -> StateVector:
    """Run ``circuit`` on basis state ``initial`` and return the final state."""
    state = StateVector.basis(circuit.n_qubits, initial)
    for gate in circuit.ops:
        apply_gate(state, gate)
    return state


def normalize_global_phase(amplitudes: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate so the first amplitude with |a| > tol is real positive."""
    for a in amplitudes:
        if abs(a) > tol:
            return amplitudes * (abs(a) / a)
    return amplitudes


def marginal_probabilities(state: StateVector, qubits: list[int] | None = None) -> np.ndarray:
    """Born probabilities over ``qubits`` (ascending order defines outcome bits)."""
    probs = state.probabilities()
    if qubits is None:
        return probs
    qubits = sorted(qubits)
    idx = _indices(state.n_qubits)
    out = np.zeros(len(idx), dtype=np.int64)
    for j, q in enumerate(qubits):
        out |= ((idx >> q) & 1) << j
    return np.bincount(out, weights=probs, minlength=1 << len(qubits))


def bitstring(index: int, n_bits: int) -> str:
    """Display form of a basis index: qubit ``n_bits - 1`` printed leftmost."""
    return format(index, f"0{n_bits}b")


@dataclass
class MeasurementHistogram:
    """Sampled measurement outcomes: display bitstring -> count."""

    shots: int
    n_bits: int
    counts: dict[str, int]

    def probability(self, outcome: str) -> float:
        return self.counts.get(outcome, 0) / self.shots

    def success_probability(self, targets) -> float:
        """Fraction of shots landing on any of the target bitstrings."""
        wanted = {targets} if isinstance(targets, str) else set(targets)
        return sum(c for b, c in self.counts.items() if b in wanted) / self.shots

    def top(self) -> tuple[str, int]:
        return max(self.counts.items(), key=lambda kv: (kv[1], kv[0]))

    def to_json(self) -> str:
        payload = {"schema": 1, "shots": self.shots, "n_bits": self.n_bits,
                   "counts": {k: self.counts[k] for k in sorted(self.counts)}}
        return json.dumps(payload, indent=2, sort_keys=True)

    def to_rows(self) -> list[tuple[str, int, float]]:
        return [(b, c, c / self.shots) for b, c in sorted(self.counts.items())]


def sample_histogram(probs: np.ndarray, shots: int, rng: np.random.Generator,
                     n_bits: int) -> MeasurementHistogram:
    """Multinomial sampling from a probability vector; deterministic given rng."""
    p = np.clip(probs, 0.0, None)
    p = p / p.sum()
    drawn = rng.multinomial(shots, p)
    counts = {bitstring(i, n_bits): int(c) for i, c in enumerate(drawn) if c}
    return MeasurementHistogram(shots, n_bits, counts)


def run_ideal(circuit: Circuit, shots: int, seed: int,
              measure: list[int] | None = None,
              return_state: bool = False):
    """Noiseless execution: statevector, then Born sampling of ``measure`` qubits.

    ``measure`` defaults to all qubits; pass the node register to read out a
    Grover result.  Returns a :class:`MeasurementHistogram`, or a
    ``(histogram, state)`` pair when ``return_state`` is set.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    state = statevector(circuit)
    qubits = sorted(measure) if measure is not None else list(range(circuit.n_qubits))
    probs = marginal_probabilities(state, qubits)
    hist = sample_histogram(probs, shots, np.random.default_rng(seed), len(qubits))
    return (hist, state) if return_state else hist
