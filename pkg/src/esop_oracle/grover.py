"""Grover circuit assembly and the iteration-count policy."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import Circuit, Gate, H, T, X, controlled_x
from .errors import InputError, UnsatError
from .formula import Formula, count_models
from .mcx import ancillas_needed, required_pool
from .oracle import OracleCircuit, synthesize_oracle


@dataclass(frozen=True)
class GroverPlan:
    n_search: int
    M: int
    k: int

    @property
    def N(self) -> int:
        return 1 << self.n_search

    @property
    def theta(self) -> float:
        return math.asin(math.sqrt(self.M / self.N))

    @property
    def over_half(self) -> bool:
        """More than half the space is marked; extra iterations would hurt."""
        return 2 * self.M > self.N

    @property
    def success_probability(self) -> float:
        return math.sin((2 * self.k + 1) * self.theta) ** 2


def plan_iterations(n_search: int, M: int, k: int | None = None) -> GroverPlan:
    """``k = floor(pi/4 * sqrt(N / M))`` unless an explicit ``k`` is given."""
    if n_search < 1:
        raise InputError("search register needs at least one qubit")
    N = 1 << n_search
    if M == 0:
        raise UnsatError("formula is unsatisfiable; Grover search is undefined")
    if not 1 <= M <= N:
        raise InputError(f"model count {M} outside 1..{N}")
    if k is None:
        k = math.floor(math.pi / 4 * math.sqrt(N / M))
    if k < 0:
        raise InputError("iteration count must be non-negative")
    return GroverPlan(n_search, M, k)


def diffusion(n_search: int) -> list[Gate]:
    """Inversion about the mean on qubits ``0 .. n_search - 1``.

    For two or more qubits this equals ``I - 2|psi0><psi0|``, i.e. the
    textbook operator times the global phase -1. One qubit gets ``H Z H = X``
    with Z written as four T gates.
    """
    if n_search < 1:
        raise InputError("diffusion needs at least one qubit")
    qubits = list(range(n_search))
    if n_search == 1:
        return [H(0), *[T(0)] * 4, H(0)]
    *rest, last = qubits
    hs = [H(q) for q in qubits]
    xs = [X(q) for q in qubits]
    core = [H(last), *controlled_x(rest, last), H(last)]
    return hs + xs + core + xs + hs


def grover_pool(oracle: OracleCircuit, n_search: int) -> int:
    return max(oracle.registry.num_decomp_ancillas, ancillas_needed(n_search - 1))


@dataclass(frozen=True)
class GroverRun:
    circuit: Circuit
    plan: GroverPlan
    oracle: OracleCircuit


def assemble_grover(f: Formula, *, models: int | None = None, iterations: int | None = None) -> GroverRun:
    """Uniform superposition over every formula variable, then ``k`` rounds of oracle + diffusion.

    ``models`` overrides brute-force model counting.
    """
    M = count_models(f)[0] if models is None else models
    n = f.num_vars
    plan = plan_iterations(n, M, iterations)
    oracle = synthesize_oracle(f)
    registry = oracle.registry.with_pool(grover_pool(oracle, n))
    round_gates = list(oracle.circuit.gates) + diffusion(n)
    gates = [H(q) for q in range(n)] + round_gates * plan.k
    assert required_pool(gates) <= registry.num_decomp_ancillas
    return GroverRun(Circuit(registry, tuple(gates)), plan, oracle)
