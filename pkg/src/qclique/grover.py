"""Grover assembly: iteration count, diffusion operator, full-algorithm circuits.

The ideal-simulation success probability of an assembled circuit must equal
the analytic rotation value sin^2((2j+1) * asin(sqrt(m/N))); that identity is
the master correctness check for the oracle and diffusion construction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, Gate
from .graph import Graph, find_cliques_bruteforce, subset_to_bitstring
from .oracle import OracleMode, build_oracle, make_layout
from .stateprep import PrepMode, prepare_state, search_space_size


class NoSolutionsError(ValueError):
    """The graph has no k-clique (m = 0); quantum counting is out of scope."""


def opt_iter(n_space: int, m_solutions: int) -> int:
    """Optimal Grover iteration count floor(pi/4 * sqrt(N/m))."""
    if n_space < 1:
        raise ValueError("search-space size must be >= 1")
    if m_solutions < 1:
        raise NoSolutionsError(
            "no solutions known (m = 0); cannot choose an iteration count")
    return math.floor(math.pi / 4.0 * math.sqrt(n_space / m_solutions))


def success_probability_analytic(n_space: int, m_solutions: int, iterations: int) -> float:
    """sin^2((2j+1) * asin(sqrt(m/N))): probability of measuring a solution after j iterations."""
    if not 1 <= m_solutions <= n_space:
        raise ValueError("need 1 <= m <= N")
    theta = math.asin(math.sqrt(m_solutions / n_space))
    return math.sin((2 * iterations + 1) * theta) ** 2


def diffusion(prep: Circuit, nodes: range | None = None) -> Circuit:
    """Reflection about the prepared state: prep^-1, X-conjugated MCZ, prep.

    ``prep`` must act only on the node register.  Equals
    prep (2|0><0| - I) prep^t up to global phase; applying it twice is the
    identity.
    """
    span = nodes if nodes is not None else range(prep.n_qubits)
    if any(q not in span for g in prep.ops for q in g.qubits):
        raise ValueError("state preparation must act only on the node register")
    circ = prep.adjoint()
    circ.name = f"diffusion({prep.name})"
    for q in span:
        circ.add("X", q)
    if len(span) == 1:
        circ.add("Z", span[0])
    else:
        circ.append(Gate("MCZ", tuple(span)))
    for q in span:
        circ.add("X", q)
    return circ.compose(prep)


@dataclass(frozen=True)
class GroverPlan:
    """Sizing of one run: search-space size N, solution count m, iterations."""

    n_space: int
    m_solutions: int
    iterations: int
    prep: PrepMode
    oracle: OracleMode
    solutions: tuple[frozenset, ...]

    def success_probability(self) -> float:
        return success_probability_analytic(self.n_space, self.m_solutions, self.iterations)

    def solution_bitstrings(self, n: int) -> list[str]:
        return [subset_to_bitstring(s, n)[1] for s in self.solutions]


def make_plan(g: Graph, k: int, prep: PrepMode, style: str = "checking",
              iterations: int | str = "auto",
              count_nodes: bool | None = None) -> GroverPlan:
    """Classical sizing pass: brute-force m, pick N from the prep mode, fix j.

    ``count_nodes`` defaults to True exactly when searching the full space.
    Raises :class:`NoSolutionsError` when the graph has no k-clique.
    """
    prep = PrepMode(prep)
    if prep is PrepMode.W_COMPLEMENT and k != g.n - 1:
        raise ValueError(
            f"W-state preparation works only for clique size k = n-1 (k={k}, n={g.n})")
    if count_nodes is None:
        count_nodes = prep is PrepMode.FULL
    mode = OracleMode(style=style, count_nodes=count_nodes)
    solutions = find_cliques_bruteforce(g, k)
    if not solutions:
        raise NoSolutionsError(f"graph has no {k}-clique")
    n_space = search_space_size(prep, g.n, k)
    if iterations == "auto":
        iterations = opt_iter(n_space, len(solutions))
    elif not (isinstance(iterations, int) and iterations >= 0):
        raise ValueError(f"iterations must be 'auto' or a non-negative integer, got {iterations!r}")
    return GroverPlan(n_space, len(solutions), iterations, prep, mode, tuple(solutions))


def assemble(g: Graph, k: int, prep: PrepMode, style: str = "checking",
             iterations: int | str = "auto",
             count_nodes: bool | None = None,
             plan: GroverPlan | None = None) -> Circuit:
    """Full search circuit: state prep, then `iterations` x (oracle, diffusion).

    When opt_iter is 0 (N = m) the circuit is just the preparation.  The node
    register is qubits [0, n); measure it to read the clique.
    """
    if plan is None:
        plan = make_plan(g, k, prep, style, iterations, count_nodes)
    prep_circuit = prepare_state(plan.prep, g.n, k)
    oracle_circuit = build_oracle(g, k, plan.oracle)
    layout = oracle_circuit.layout
    diffusion_circuit = diffusion(prep_circuit, layout.nodes)

    circ = Circuit(layout.total_qubits, layout.registers,
                   name=f"grover({plan.prep.value},{plan.oracle.style},k={k})")
    circ = circ.compose(prep_circuit)
    for _ in range(plan.iterations):
        circ = circ.compose(oracle_circuit).compose(diffusion_circuit)
    circ.layout = layout
    circ.plan = plan
    return circ
