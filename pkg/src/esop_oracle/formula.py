"""Boolean formula representations: expressions, CNF and e-CNF.

Variables are 1-based (DIMACS style). Assignments are sequences of bits where
position ``i`` holds the value of variable ``i + 1``. When assignments are
packed into an integer basis index, variable ``i + 1`` is bit ``i`` (little
endian), matching the qubit order used by the simulator.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import CapacityError, InputError

BRUTE_FORCE_CAP = int(os.environ.get("ESOP_ORACLE_BRUTE_FORCE_CAP", "24"))


@dataclass(frozen=True, order=True)
class Literal:
    var: int
    negated: bool = False

    def __post_init__(self):
        if self.var < 1:
            raise InputError(f"variable index must be >= 1, got {self.var}")

    @classmethod
    def from_int(cls, value: int) -> Literal:
        if value == 0:
            raise InputError("0 is not a literal")
        return cls(abs(value), value < 0)

    def to_int(self) -> int:
        return -self.var if self.negated else self.var

    def __neg__(self) -> Literal:
        return Literal(self.var, not self.negated)

    def value(self, bits: Sequence[int]) -> int:
        return int(bits[self.var - 1]) ^ int(self.negated)

    def __str__(self):
        return ("~x" if self.negated else "x") + str(self.var)


@dataclass(frozen=True)
class Clause:
    """Disjunction of literals."""

    literals: tuple[Literal, ...]

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))
        if not self.literals:
            raise InputError("clause must contain at least one literal")
        if len(set(self.literals)) != len(self.literals):
            raise InputError(f"duplicate literal in clause {self}")

    @classmethod
    def of(cls, *ints: int) -> Clause:
        return cls(tuple(Literal.from_int(i) for i in ints))

    @property
    def is_tautology(self) -> bool:
        """Contains some variable in both polarities."""
        return len({lit.var for lit in self.literals}) != len(self.literals)

    def value(self, bits: Sequence[int]) -> int:
        return int(any(lit.value(bits) for lit in self.literals))

    def __len__(self):
        return len(self.literals)

    def __str__(self):
        return "(" + " | ".join(map(str, self.literals)) + ")"


@dataclass(frozen=True)
class Monomial:
    """Conjunction of literals, or the constant 1 when ``is_constant_one``."""

    literals: tuple[Literal, ...] = ()
    is_constant_one: bool = False

    def __post_init__(self):
        object.__setattr__(self, "literals", tuple(self.literals))
        if self.is_constant_one:
            if self.literals:
                raise InputError("constant-one monomial cannot carry literals")
            return
        if not self.literals:
            raise InputError("monomial needs a literal or must be constant one")
        variables = [lit.var for lit in self.literals]
        if len(set(variables)) != len(variables):
            raise InputError(f"variable repeated inside monomial {self}")

    @classmethod
    def one(cls) -> Monomial:
        return cls((), True)

    @classmethod
    def of(cls, *ints: int) -> Monomial:
        return cls(tuple(Literal.from_int(i) for i in ints))

    @property
    def key(self):
        """Order-insensitive identity used for XOR cancellation."""
        return frozenset(self.literals) if not self.is_constant_one else "1"

    def value(self, bits: Sequence[int]) -> int:
        if self.is_constant_one:
            return 1
        return int(all(lit.value(bits) for lit in self.literals))

    def __len__(self):
        return len(self.literals)

    def __str__(self):
        if self.is_constant_one:
            return "1"
        return "&".join(map(str, self.literals))


def product(literals: Iterable[Literal]) -> Monomial | None:
    """Build a monomial from possibly repetitive literals.

    Repeated literals collapse (x & x = x). A complementary pair makes the
    product constant 0, reported as ``None``. An empty input is the constant 1.
    """
    seen: dict[int, Literal] = {}
    for lit in literals:
        prior = seen.get(lit.var)
        if prior is None:
            seen[lit.var] = lit
        elif prior != lit:
            return None
    if not seen:
        return Monomial.one()
    return Monomial(tuple(seen.values()))


def normalize_monomials(monomials: Iterable[Monomial]) -> tuple[Monomial, ...]:
    """Cancel identical monomials pairwise, keeping first-occurrence order."""
    monomials = list(monomials)
    counts: dict[object, int] = {}
    for mono in monomials:
        counts[mono.key] = counts.get(mono.key, 0) + 1
    kept, emitted = [], set()
    for mono in monomials:
        if counts[mono.key] % 2 and mono.key not in emitted:
            kept.append(mono)
            emitted.add(mono.key)
    return tuple(kept)


@dataclass(frozen=True)
class EsopClause:
    """XOR of monomials. Construction normalizes away cancelling duplicates."""

    monomials: tuple[Monomial, ...]

    def __post_init__(self):
        normalized = normalize_monomials(self.monomials)
        if not normalized:
            raise InputError("ESOP clause is constant 0 after normalization")
        object.__setattr__(self, "monomials", normalized)

    @classmethod
    def of(cls, *terms: Union[str, Sequence[int]]) -> EsopClause:
        """Shorthand: ``EsopClause.of([1], "T", [2, -3])``."""
        monos = []
        for term in terms:
            if term == "T":
                monos.append(Monomial.one())
            else:
                monos.append(Monomial.of(*term))
        return cls(tuple(monos))

    def value(self, bits: Sequence[int]) -> int:
        acc = 0
        for mono in self.monomials:
            acc ^= mono.value(bits)
        return acc

    def __len__(self):
        return len(self.monomials)

    def __str__(self):
        return "(" + " ^ ".join(map(str, self.monomials)) + ")"


def _check_range(num_vars: int, literals: Iterable[Literal]):
    if num_vars < 0:
        raise InputError("num_vars must be non-negative")
    for lit in literals:
        if lit.var > num_vars:
            raise InputError(f"literal {lit} exceeds declared variable count {num_vars}")


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple[Clause, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        _check_range(self.num_vars, (lit for c in self.clauses for lit in c.literals))

    def __str__(self):
        return " & ".join(map(str, self.clauses)) or "1"


@dataclass(frozen=True)
class EcnfFormula:
    num_vars: int
    clauses: tuple[EsopClause, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(self.clauses))
        _check_range(
            self.num_vars,
            (lit for c in self.clauses for m in c.monomials for lit in m.literals),
        )

    def __str__(self):
        return " & ".join(map(str, self.clauses)) or "1"


Formula = Union[CnfFormula, EcnfFormula]


# --- expression AST -------------------------------------------------------


class BoolExpr:
    """Base class of the operator AST."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(BoolExpr):
    index: int

    def __post_init__(self):
        if self.index < 1:
            raise InputError(f"variable index must be >= 1, got {self.index}")


@dataclass(frozen=True)
class Const(BoolExpr):
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise InputError(f"constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True)
class Not(BoolExpr):
    child: BoolExpr


@dataclass(frozen=True)
class _Binary(BoolExpr):
    left: BoolExpr
    right: BoolExpr


class And(_Binary):
    pass


class Or(_Binary):
    pass


class Xor(_Binary):
    pass


class Iff(_Binary):
    pass


class Implies(_Binary):
    pass


BINARY_OPS = (And, Or, Xor, Iff, Implies)


def max_var(e: BoolExpr) -> int:
    if isinstance(e, Var):
        return e.index
    if isinstance(e, Const):
        return 0
    if isinstance(e, Not):
        return max_var(e.child)
    return max(max_var(e.left), max_var(e.right))


def eval_expr(e: BoolExpr, assignment: Sequence[int]) -> int:
    if isinstance(e, Var):
        if e.index > len(assignment):
            raise InputError(f"x{e.index} is not covered by an assignment of length {len(assignment)}")
        return int(assignment[e.index - 1])
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Not):
        return 1 - eval_expr(e.child, assignment)
    a = eval_expr(e.left, assignment)
    b = eval_expr(e.right, assignment)
    if isinstance(e, And):
        return a & b
    if isinstance(e, Or):
        return a | b
    if isinstance(e, Xor):
        return a ^ b
    if isinstance(e, Iff):
        return 1 - (a ^ b)
    if isinstance(e, Implies):
        return (1 - a) | b
    raise InputError(f"unknown expression node {type(e).__name__}")


# --- evaluation and model counting ----------------------------------------


def _check_assignment(num_vars: int, assignment: Sequence[int]):
    if len(assignment) != num_vars:
        raise InputError(f"assignment has length {len(assignment)}, formula has {num_vars} variables")


def eval_cnf(f: CnfFormula, assignment: Sequence[int]) -> int:
    _check_assignment(f.num_vars, assignment)
    return int(all(c.value(assignment) for c in f.clauses))


def eval_ecnf(f: EcnfFormula, assignment: Sequence[int]) -> int:
    _check_assignment(f.num_vars, assignment)
    return int(all(c.value(assignment) for c in f.clauses))


def evaluate(f: Formula, assignment: Sequence[int]) -> int:
    if isinstance(f, CnfFormula):
        return eval_cnf(f, assignment)
    return eval_ecnf(f, assignment)


def _literal_columns(num_vars: int) -> np.ndarray:
    index = np.arange(1 << num_vars, dtype=np.int64)
    return ((index[None, :] >> np.arange(num_vars, dtype=np.int64)[:, None]) & 1).astype(bool)


def truth_table(f: Formula, *, cap: int | None = None) -> np.ndarray:
    """Vectorised evaluation over every assignment.

    Entry ``k`` is ``F`` at the assignment whose variable ``i + 1`` equals bit
    ``i`` of ``k``.
    """
    cap = BRUTE_FORCE_CAP if cap is None else cap
    if f.num_vars > cap:
        raise CapacityError(f"{f.num_vars} variables exceed the brute-force cap of {cap}")
    bits = _literal_columns(f.num_vars)

    def lit_col(lit: Literal) -> np.ndarray:
        col = bits[lit.var - 1]
        return ~col if lit.negated else col

    table = np.ones(1 << f.num_vars, dtype=bool)
    for clause in f.clauses:
        if isinstance(clause, Clause):
            acc = np.zeros_like(table)
            for lit in clause.literals:
                acc |= lit_col(lit)
        else:
            acc = np.zeros_like(table)
            for mono in clause.monomials:
                if mono.is_constant_one:
                    acc = ~acc
                    continue
                term = np.ones_like(table)
                for lit in mono.literals:
                    term &= lit_col(lit)
                acc ^= term
        table &= acc
    return table


def index_to_bits(index: int, num_vars: int) -> tuple[int, ...]:
    return tuple((index >> i) & 1 for i in range(num_vars))


def bits_to_index(bits: Sequence[int]) -> int:
    return sum(int(b) << i for i, b in enumerate(bits))


def count_models(f: Formula, *, cap: int | None = None) -> tuple[int, list[tuple[int, ...]]]:
    """Exhaustively enumerate satisfying assignments.

    Returns ``(M, models)`` with models as bit tuples ``(x1, ..., xn)`` sorted
    ascending when read as binary strings ``x1 x2 ... xn``.
    """
    table = truth_table(f, cap=cap)
    models = sorted(index_to_bits(int(k), f.num_vars) for k in np.flatnonzero(table))
    return len(models), models


def all_assignments(num_vars: int) -> Iterable[tuple[int, ...]]:
    return itertools.product((0, 1), repeat=num_vars)


def expr_models(e: BoolExpr, num_vars: int | None = None) -> list[tuple[int, ...]]:
    n = max_var(e) if num_vars is None else num_vars
    if n > BRUTE_FORCE_CAP:
        raise CapacityError(f"{n} variables exceed the brute-force cap of {BRUTE_FORCE_CAP}")
    return [bits for bits in all_assignments(n) if eval_expr(e, bits)]

