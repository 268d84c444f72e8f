"""Resource accounting: gate-category counts, quantum-volume requirement, roadmap year.

Absolute gate totals depend on the target gate set and transpiler; reports
carry this package's own native and lowered metrics, and cross-configuration
comparisons rely on orderings rather than exact totals.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .circuit import Circuit, decompose_mc

#: Baseline of the doubling extrapolation: quantum volume 32 was reached in 2020.
QV_BASE_YEAR = 2020
QV_BASE = 32

_CATEGORY = {"X": "NOT", "CX": "CNOT", "CCX": "CCNOT",
             "H": "U", "U2": "U", "U3": "U", "RY": "U"}


def gate_categories(counts: dict[str, int]) -> dict[str, int]:
    """Collapse per-kind counts into NOT / CNOT / CCNOT / U / other buckets."""
    out = {"NOT": 0, "CNOT": 0, "CCNOT": 0, "U": 0, "other": 0}
    for kind, c in counts.items():
        out[_CATEGORY.get(kind, "other")] += c
    return out


class YearEstimate(NamedTuple):
    year: int
    clamped: bool


def required_qv(depth: int, n_qubits: int) -> int:
    """Quantum volume needed to run a circuit: 2^min(depth, n_qubits)."""
    if depth < 1 or n_qubits < 1:
        raise ValueError("depth and qubit count must be >= 1")
    return 1 << min(depth, n_qubits)


def year_estimate(qv: int) -> YearEstimate:
    """Calendar year the doubling roadmap reaches ``qv`` (32 -> 2020, 512 -> 2024).

    Values below the 2020 baseline are clamped to 2020 and flagged.
    """
    if qv < 1 or qv & (qv - 1):
        raise ValueError(f"quantum volume must be a power of two, got {qv}")
    if qv < QV_BASE:
        return YearEstimate(QV_BASE_YEAR, True)
    return YearEstimate(QV_BASE_YEAR + int(math.log2(qv // QV_BASE)), False)


@dataclass(frozen=True)
class ResourceReport:
    """Native and lowered size/depth/width plus QV requirement for one circuit."""

    config: dict
    size: int
    depth: int
    n_qubits: int
    counts: dict[str, int]
    decomposed_size: int
    decomposed_depth: int
    decomposed_n_qubits: int
    decomposed_counts: dict[str, int]
    required_qv: int
    year: int
    year_clamped: bool

    def to_dict(self) -> dict:
        return {
            "schema": 1,
            "config": self.config,
            "native": {"size": self.size, "depth": self.depth, "n_qubits": self.n_qubits,
                       "counts": self.counts},
            "decomposed": {"size": self.decomposed_size, "depth": self.decomposed_depth,
                           "n_qubits": self.decomposed_n_qubits,
                           "counts": self.decomposed_counts},
            "required_qv": self.required_qv,
            "year_estimate": self.year,
            "year_clamped": self.year_clamped,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def report(circuit: Circuit, config: dict | None = None) -> ResourceReport:
    """Metrics before and after lowering; QV from the lowered depth and width."""
    native = circuit.metrics()
    lowered = decompose_mc(circuit).metrics()
    if lowered.size:
        qv = required_qv(lowered.depth, lowered.n_qubits)
        year = year_estimate(qv)
    else:
        qv, year = 1, YearEstimate(QV_BASE_YEAR, True)
    return ResourceReport(
        config=dict(config or {}),
        size=native.size, depth=native.depth, n_qubits=native.n_qubits,
        counts=gate_categories(native.counts),
        decomposed_size=lowered.size, decomposed_depth=lowered.depth,
        decomposed_n_qubits=lowered.n_qubits,
        decomposed_counts=gate_categories(lowered.counts),
        required_qv=qv, year=year.year, year_clamped=year.clamped,
    )


def linear_fit_r2(xs, ys) -> tuple[float, float, float]:
    """Least-squares line fit returning (slope, intercept, R^2)."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    slope, intercept = np.polyfit(xs, ys, 1)
    predicted = slope * xs + intercept
    ss_res = float(np.sum((ys - predicted) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0 else 1.0 - ss_res / ss_tot
    return float(slope), float(intercept), r2


def format_table(rows: list[dict], columns: list[str]) -> str:
    """Aligned text table (header + rows) for terminal reports."""
    widths = [max(len(col), *(len(str(r.get(col, ""))) for r in rows)) if rows else len(col)
              for col in columns]
    def fmt(values):
        return "  ".join(str(v).rjust(w) for v, w in zip(values, widths))
    lines = [fmt(columns)]
    lines.append("  ".join("-" * w for w in widths))
    lines += [fmt([r.get(col, "") for col in columns]) for r in rows]
    return "\n".join(lines)
