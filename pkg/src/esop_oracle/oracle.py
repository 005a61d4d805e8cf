"""Phase-oracle synthesis for CNF and e-CNF formulas.

Each clause is computed onto its own clean ancilla (the compute block), the
conjunction of all clause ancillas flips the phase, and the compute block is
run backwards to clean up.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property

from .circuit import (
    CX,
    KICKBACK,
    MCX,
    POLARITY,
    Circuit,
    Gate,
    H,
    QubitRegistry,
    T,
    X,
    controlled_x,
    invert_gates,
)
from .errors import SynthesisError
from .formula import Clause, CnfFormula, EcnfFormula, EsopClause, Formula
from .mcx import lower, required_pool


class FormulaKind(str, enum.Enum):
    CNF = "CNF"
    ECNF = "e-CNF"


def qubit_of(var: int) -> int:
    return var - 1


def synthesize_clause_cnf(c: Clause, y: int) -> list[Gate]:
    """Leave ``y = l1 | ... | lk`` via ``y = 1 ^ (~l1 & ... & ~lk)``."""
    if not len(c):
        raise SynthesisError("cannot synthesize an empty clause")
    if c.is_tautology:
        return [X(y)]
    qubits = [qubit_of(lit.var) for lit in c.literals]
    flips = [X(qubit_of(lit.var), POLARITY) for lit in c.literals if not lit.negated]
    return [X(y), *flips, *controlled_x(qubits, y), *flips]


def synthesize_clause_ecnf(e: EsopClause, y: int) -> list[Gate]:
    """XOR every monomial of ``e`` into ``y``.

    The constant monomial is a bare X on ``y``. A lone complemented literal
    ``~x`` is emitted as ``x ^ 1`` (CX then X on ``y``) instead of an
    X-conjugated CX.
    """
    gates: list[Gate] = []
    for mono in e.monomials:
        if mono.is_constant_one:
            gates.append(X(y))
            continue
        if len(mono) == 1:
            lit = mono.literals[0]
            gates.append(CX(qubit_of(lit.var), y))
            if lit.negated:
                gates.append(X(y))
            continue
        flips = [X(qubit_of(lit.var), POLARITY) for lit in mono.literals if lit.negated]
        gates += [*flips, MCX([qubit_of(lit.var) for lit in mono.literals], y), *flips]
    return gates


def phase_block(ancillas: list[int]) -> list[Gate]:
    """-1 on the state where every clause ancilla is 1."""
    if not ancillas:
        raise SynthesisError("phase flip needs at least one clause ancilla")
    *rest, last = ancillas
    if not rest:
        return [T(last)] * 4  # Z inside the gate set
    return [H(last, KICKBACK), *controlled_x(rest, last), H(last, KICKBACK)]


@dataclass(frozen=True)
class OracleCircuit:
    circuit: Circuit
    formula_kind: FormulaKind
    m: int
    compute_len: int

    @property
    def registry(self) -> QubitRegistry:
        return self.circuit.registry

    @property
    def compute(self) -> tuple[Gate, ...]:
        return self.circuit.gates[: self.compute_len]

    @property
    def phase(self) -> tuple[Gate, ...]:
        return self.circuit.gates[self.compute_len : len(self.circuit) - self.compute_len]

    @property
    def uncompute(self) -> tuple[Gate, ...]:
        return self.circuit.gates[len(self.circuit) - self.compute_len :]

    @cached_property
    def lowered(self) -> Circuit:
        return lower(self.circuit)


def synthesize_oracle(f: Formula) -> OracleCircuit:
    """Build ``O_F`` with every declared variable on its own input qubit."""
    m = len(f.clauses)
    if m == 0:
        raise SynthesisError("formula has no clauses; there is nothing to mark")
    n = f.num_vars
    ancillas = list(range(n, n + m))
    compute: list[Gate] = []
    if isinstance(f, CnfFormula):
        kind = FormulaKind.CNF
        for clause, y in zip(f.clauses, ancillas):
            compute += synthesize_clause_cnf(clause, y)
    elif isinstance(f, EcnfFormula):
        kind = FormulaKind.ECNF
        for clause, y in zip(f.clauses, ancillas):
            compute += synthesize_clause_ecnf(clause, y)
    else:
        raise SynthesisError(f"unsupported formula type {type(f).__name__}")
    gates = compute + phase_block(ancillas) + invert_gates(compute)
    registry = QubitRegistry(n, m, required_pool(gates))
    return OracleCircuit(Circuit(registry, tuple(gates)), kind, m, len(compute))
