"""Thermal relaxation (T1/T2) noise: profiles, channels, Monte-Carlo trajectories.

The channel for an interval t satisfies, on any single-qubit density matrix,

    rho_11 -> rho_11 * exp(-t/T1)        (excited population decays to ground)
    rho_01 -> rho_01 * exp(-t/T2)        (coherence decays)

Two trajectory implementations realize it:

* ``mixture`` (valid for T2 <= T1): probabilistic {identity, phase-flip,
  reset-to-|0>} instruction selection with state-independent weights.
* ``kraus`` (valid for T2 <= 2*T1): amplitude-damping Kraus selection with
  Born-rule branch weights and renormalization, followed by a probabilistic
  phase flip for the residual pure dephasing.

Trajectory runs are deterministic given the seed: trajectory ``i`` draws from
``numpy.random.default_rng(SeedSequence(entropy=seed, spawn_key=(i,)))``, so
results do not depend on worker count or chunking.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .circuit import Circuit, Gate, _lower_gate
from .sim import MeasurementHistogram, StateVector, apply_gate, bitstring, marginal_probabilities


@dataclass(frozen=True)
class NoiseProfile:
    """Decoherence times (microseconds), gate-class durations (nanoseconds).

    ``apply_idle`` extends relaxation to qubits sitting idle during other
    gates' time slices, not just to each gate's operands.
    """

    name: str
    t1_us: float
    t2_us: float
    u2_ns: float = 50.0
    u3_ns: float = 100.0
    cx_ns: float = 300.0
    readout_ns: float = 1000.0
    apply_idle: bool = True

    def __post_init__(self) -> None:
        if self.t1_us <= 0:
            raise ValueError("T1 must be positive")
        if not 0 < self.t2_us <= 2 * self.t1_us:
            raise ValueError(f"T2 must satisfy 0 < T2 <= 2*T1, got T1={self.t1_us}, T2={self.t2_us}")
        if min(self.u2_ns, self.u3_ns, self.cx_ns, self.readout_ns) <= 0:
            raise ValueError("gate durations must be positive")

    @property
    def default_implementation(self) -> str:
        return "mixture" if self.t2_us <= self.t1_us else "kraus"

    def to_json(self) -> str:
        return json.dumps({
            "schema": 1, "name": self.name, "t1_us": self.t1_us, "t2_us": self.t2_us,
            "gate_ns": {"u2": self.u2_ns, "u3": self.u3_ns, "cx": self.cx_ns},
            "readout_ns": self.readout_ns, "apply_idle": self.apply_idle,
        }, indent=2)

    @classmethod
    def from_json(cls, text: str) -> NoiseProfile:
        data = json.loads(text)
        gate_ns = data.get("gate_ns", {})
        return cls(
            name=data["name"], t1_us=float(data["t1_us"]), t2_us=float(data["t2_us"]),
            u2_ns=float(gate_ns.get("u2", 50.0)), u3_ns=float(gate_ns.get("u3", 100.0)),
            cx_ns=float(gate_ns.get("cx", 300.0)),
            readout_ns=float(data.get("readout_ns", 1000.0)),
            apply_idle=bool(data.get("apply_idle", True)),
        )


# Duration classes for directly timed gates; every other kind is lowered via
# decompose_mc rules (CCX additionally to the standard 6-CX network) and timed
# by the ASAP critical path of its lowering.
_TIMED_CLASS = {"H": "u2", "U2": "u2", "U3": "u3", "RY": "u3", "X": "u3", "Z": "u3",
                "CX": "cx", "CZ": "cx"}

_T_ANGLE = math.pi / 4.0

# Standard CCX network over {H, CX, T, Tdg}; T gates written as U3 phase gates.
_CCX_TIMING_NET = [
    ("H", (2,), ()), ("CX", (1, 2), ()), ("U3", (2,), (0.0, 0.0, -_T_ANGLE)),
    ("CX", (0, 2), ()), ("U3", (2,), (0.0, 0.0, _T_ANGLE)), ("CX", (1, 2), ()),
    ("U3", (2,), (0.0, 0.0, -_T_ANGLE)), ("CX", (0, 2), ()), ("U3", (1,), (0.0, 0.0, _T_ANGLE)),
    ("U3", (2,), (0.0, 0.0, _T_ANGLE)), ("H", (2,), ()), ("CX", (0, 1), ()),
    ("U3", (0,), (0.0, 0.0, _T_ANGLE)), ("U3", (1,), (0.0, 0.0, -_T_ANGLE)), ("CX", (0, 1), ()),
]


def _sequence_duration_ns(gates, profile: NoiseProfile) -> float:
    ready: dict[int, float] = {}
    for gate in gates:
        d = gate_duration_ns(gate, profile)
        start = max((ready.get(q, 0.0) for q in gate.qubits), default=0.0)
        for q in gate.qubits:
            ready[q] = start + d
    return max(ready.values(), default=0.0)


def gate_duration_ns(gate: Gate, profile: NoiseProfile) -> float:
    """Wall-clock duration of one gate under the profile's gate-class timings.

    CCX, CRY, CCRY, MCX and MCZ carry no duration class of their own; their
    duration is the ASAP critical path of their lowering into timed gates.
    The trajectory simulator still applies such gates as single unitaries.
    """
    return _duration_by_shape(gate.kind, len(gate.qubits), profile)


@lru_cache(maxsize=512)
def _duration_by_shape(kind: str, arity: int, profile: NoiseProfile) -> float:
    if kind in _TIMED_CLASS:
        return {"u2": profile.u2_ns, "u3": profile.u3_ns, "cx": profile.cx_ns}[_TIMED_CLASS[kind]]
    if kind == "CCX":
        return _sequence_duration_ns(
            (Gate(k, q, p) for k, q, p in _CCX_TIMING_NET), profile)
    # representative gate of this shape; lowering shape is angle-independent
    params = {"CRY": (1.0,), "CCRY": (1.0,)}.get(kind, ())
    probe = Gate(kind, tuple(range(arity)), params)
    anc = range(arity, arity + max(arity, 2))
    return _sequence_duration_ns(_lower_gate(probe, anc), profile)


class RelaxationChannel:
    """Single-qubit thermal relaxation over ``t_ns`` for a given profile."""

    def __init__(self, t_ns: float, profile: NoiseProfile, implementation: str | None = None):
        if t_ns < 0:
            raise ValueError("negative duration")
        implementation = implementation or profile.default_implementation
        if implementation not in ("mixture", "kraus"):
            raise ValueError(f"unknown channel implementation {implementation!r}")
        t1 = profile.t1_us * 1000.0
        t2 = profile.t2_us * 1000.0
        self.t_ns = t_ns
        self.implementation = implementation
        self.decay1 = math.exp(-t_ns / t1)           # exp(-t/T1)
        self.decay2 = math.exp(-t_ns / t2)           # exp(-t/T2)
        self.gamma = 1.0 - self.decay1
        if implementation == "mixture":
            if t2 > t1 * (1 + 1e-12):
                raise ValueError("mixture implementation requires T2 <= T1")
            self.p_reset = self.gamma
            self.p_z = max((self.decay1 - self.decay2) / 2.0, 0.0)
        else:
            # residual pure dephasing after amplitude damping: T2 <= 2*T1
            self.p_phi = max((1.0 - self.decay2 / math.sqrt(self.decay1)) / 2.0, 0.0)

    def evolve_density(self, rho: np.ndarray) -> np.ndarray:
        """Closed-form channel action on a 2x2 density matrix."""
        out = np.array(rho, dtype=np.complex128)
        p1 = out[1, 1]
        out[1, 1] = p1 * self.decay1
        out[0, 0] = out[0, 0] + p1 * self.gamma
        out[0, 1] *= self.decay2
        out[1, 0] *= self.decay2
        return out

    def apply(self, amplitudes: np.ndarray, qubit: int, rng: np.random.Generator) -> None:
        """One stochastic application to a pure state, in place, renormalized."""
        if self.t_ns == 0.0:
            return
        view = amplitudes.reshape(-1, 2, 1 << qubit)
        if self.implementation == "mixture":
            u = rng.random()
            if u < self.p_reset:
                self._reset(view, rng)
            elif u < self.p_reset + self.p_z:
                view[:, 1, :] *= -1.0
            return
        # kraus: amplitude damping with Born-weighted branch selection
        p1 = float(np.sum(np.abs(view[:, 1, :]) ** 2))
        if rng.random() < self.gamma * p1:
            view[:, 0, :] = view[:, 1, :] / math.sqrt(p1)
            view[:, 1, :] = 0.0
        else:
            view[:, 1, :] *= math.sqrt(1.0 - self.gamma)
            amplitudes /= math.sqrt(1.0 - self.gamma * p1)
        if rng.random() < self.p_phi:
            view[:, 1, :] *= -1.0

    @staticmethod
    def _reset(view: np.ndarray, rng: np.random.Generator) -> None:
        # reset instruction: projective measurement, then set |0>
        p1 = float(np.sum(np.abs(view[:, 1, :]) ** 2))
        if rng.random() < p1:
            view[:, 0, :] = view[:, 1, :] / math.sqrt(p1)
        else:
            view[:, 0, :] /= math.sqrt(max(1.0 - p1, 1e-300))
        view[:, 1, :] = 0.0


def relaxation_channel(t_ns: float, profile: NoiseProfile,
                       implementation: str | None = None) -> RelaxationChannel:
    """Channel whose average action matches the closed-form T1/T2 decay."""
    return RelaxationChannel(t_ns, profile, implementation)


def compile_noisy_program(circuit: Circuit, profile: NoiseProfile,
                          implementation: str | None = None) -> list:
    """ASAP-schedule a circuit into (gate | relax) steps shared by all trajectories.

    Per-qubit clocks advance by each gate's duration; idle gaps (when
    ``apply_idle`` is set) and gate intervals become relaxation steps, merged
    per qubit until the next gate touches it.  A final step per qubit covers
    the idle tail plus the readout interval.
    """
    n = circuit.n_qubits
    ready = [0.0] * n
    pending = [0.0] * n
    steps: list = []
    channels: dict[float, RelaxationChannel] = {}

    def flush(q: int) -> None:
        t = pending[q]
        if t <= 0.0:
            return
        if t not in channels:
            channels[t] = RelaxationChannel(t, profile, implementation)
        steps.append(("relax", q, channels[t]))
        pending[q] = 0.0

    for gate in circuit.ops:
        duration = gate_duration_ns(gate, profile)
        start = max(ready[q] for q in gate.qubits)
        for q in gate.qubits:
            if profile.apply_idle:
                pending[q] += start - ready[q]
            flush(q)
        steps.append(("gate", gate))
        for q in gate.qubits:
            pending[q] += duration
            ready[q] = start + duration
    t_end = max(ready)
    for q in range(n):
        if profile.apply_idle:
            pending[q] += t_end - ready[q]
        pending[q] += profile.readout_ns
        flush(q)
    return steps


def _shot_allocation(shots: int, trajectories: int) -> list[int]:
    base, extra = divmod(shots, trajectories)
    return [base + (1 if i < extra else 0) for i in range(trajectories)]


def _run_trajectory_block(args) -> np.ndarray:
    steps, n_qubits, measured, seed, start, alloc = args
    counts = np.zeros(1 << len(measured), dtype=np.int64)
    state = StateVector.zero(n_qubits)
    for offset, shots_i in enumerate(alloc):
        if shots_i == 0:
            continue
        index = start + offset
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
        amp = state.amplitudes
        amp[:] = 0.0
        amp[0] = 1.0
        for step in steps:
            if step[0] == "gate":
                apply_gate(state, step[1])
            else:
                step[2].apply(amp, step[1], rng)
        probs = marginal_probabilities(state, measured)
        probs = np.clip(probs, 0.0, None)
        counts += rng.multinomial(shots_i, probs / probs.sum())
    return counts


def run_noisy(circuit: Circuit, profile: NoiseProfile, shots: int, trajectories: int,
              seed: int, measure: list[int] | None = None,
              implementation: str | None = None, workers: int = 1) -> MeasurementHistogram:
    """Monte-Carlo trajectory execution under thermal relaxation.

    Each trajectory replays the compiled schedule with stochastic channel
    applications, then contributes its share of the ``shots`` (round-robin
    allocation).  Identical (circuit, profile, shots, trajectories, seed)
    produce identical histograms for any ``workers`` count, because trajectory
    ``i`` always uses the substream ``SeedSequence(entropy=seed, spawn_key=(i,))``
    and counts are aggregated by order-independent summation.
    """
    if shots < 1 or trajectories < 1:
        raise ValueError("shots and trajectories must be >= 1")
    steps = compile_noisy_program(circuit, profile, implementation)
    measured = sorted(measure) if measure is not None else list(range(circuit.n_qubits))
    alloc = _shot_allocation(shots, trajectories)

    workers = max(1, workers)
    jobs = []
    chunk = (trajectories + workers - 1) // workers
    for start in range(0, trajectories, chunk):
        jobs.append((steps, circuit.n_qubits, measured, seed, start,
                     alloc[start:start + chunk]))
    if workers == 1 or len(jobs) == 1:
        blocks = [_run_trajectory_block(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(_run_trajectory_block, jobs))
    totals = np.sum(blocks, axis=0)
    counts = {bitstring(i, len(measured)): int(c) for i, c in enumerate(totals) if c}
    return MeasurementHistogram(shots, len(measured), counts)
