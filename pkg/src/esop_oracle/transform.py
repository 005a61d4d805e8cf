"""Encoding passes from expressions to CNF (Tseitin) and to e-CNF.

Both passes share one gate network: every binary connective gets a fresh
auxiliary variable, allocated in post-order starting at ``max_var(e) + 1``.
Negation never allocates; it flips the polarity of the literal that represents
the child. The root literal is asserted by a unit clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import EncodingError
from .formula import (
    And,
    BoolExpr,
    Clause,
    CnfFormula,
    Const,
    EcnfFormula,
    EsopClause,
    Iff,
    Implies,
    Literal,
    Monomial,
    Not,
    Or,
    Var,
    Xor,
    max_var,
    product,
)


def fold_constants(e: BoolExpr) -> BoolExpr:
    """Remove every ``Const`` below the root (the result may itself be a ``Const``)."""
    if isinstance(e, (Var, Const)):
        return e
    if isinstance(e, Not):
        child = fold_constants(e.child)
        if isinstance(child, Const):
            return Const(1 - child.value)
        return Not(child)
    a, b = fold_constants(e.left), fold_constants(e.right)
    if not isinstance(a, Const) and not isinstance(b, Const):
        return type(e)(a, b)
    if isinstance(e, Implies):
        if isinstance(a, Const):
            return b if a.value else Const(1)
        return Const(1) if b.value else Not(a)
    # remaining connectives are commutative
    c, x = (a, b) if isinstance(a, Const) else (b, a)
    if isinstance(x, Const):
        return Const(_apply(type(e), c.value, x.value))
    if isinstance(e, And):
        return x if c.value else Const(0)
    if isinstance(e, Or):
        return Const(1) if c.value else x
    if isinstance(e, Xor):
        return Not(x) if c.value else x
    return x if c.value else Not(x)  # Iff


def _apply(op: type, a: int, b: int) -> int:
    return {And: a & b, Or: a | b, Xor: a ^ b, Iff: 1 - (a ^ b)}[op]


@dataclass(frozen=True)
class GateDef:
    """``aux <=> op(operands)`` with op one of "and", "or", "xor"."""

    aux: int
    op: str
    operands: tuple[Literal, ...]
    source: BoolExpr


@dataclass(frozen=True)
class GateNetwork:
    num_inputs: int
    gates: tuple[GateDef, ...]
    root: Literal | None
    constant: int | None = None

    @property
    def num_vars(self) -> int:
        return self.num_inputs + len(self.gates)


def build_network(e: BoolExpr) -> GateNetwork:
    n = max_var(e)
    folded = fold_constants(e)
    if isinstance(folded, Const):
        return GateNetwork(n, (), None, folded.value)
    gates: list[GateDef] = []

    def visit(node: BoolExpr) -> Literal:
        if isinstance(node, Var):
            return Literal(node.index)
        if isinstance(node, Not):
            return -visit(node.child)
        a, b = visit(node.left), visit(node.right)
        if isinstance(node, And):
            op, operands, negate = "and", (a, b), False
        elif isinstance(node, Or):
            op, operands, negate = "or", (a, b), False
        elif isinstance(node, Implies):
            op, operands, negate = "or", (-a, b), False
        elif isinstance(node, Xor):
            op, operands, negate = "xor", (a, b), False
        elif isinstance(node, Iff):
            op, operands, negate = "xor", (a, b), True
        else:
            raise EncodingError(f"unsupported node {type(node).__name__}")
        aux = n + len(gates) + 1
        gates.append(GateDef(aux, op, operands, node))
        return Literal(aux, negate)

    root = visit(folded)
    return GateNetwork(n, tuple(gates), root)


# --- CNF ------------------------------------------------------------------


def _clause(*lits: Literal) -> Clause:
    unique = tuple(dict.fromkeys(lits))
    return Clause(unique)


def gate_clauses(p: Literal, op: str, operands: Sequence[Literal]) -> list[Clause]:
    """Gate-style CNF for ``p <=> op(operands)`` on two operands.

    Tautologies and repeated clauses (from operands on the same variable)
    are dropped.
    """
    if len(operands) != 2:
        raise EncodingError("Tseitin gates are binary")
    a, b = operands
    if op == "and":
        raw = [_clause(-a, -b, p), _clause(a, -p), _clause(b, -p)]
    elif op == "or":
        raw = [_clause(p, -a), _clause(p, -b), _clause(-p, a, b)]
    elif op == "xor":
        raw = [_clause(-p, a, b), _clause(-p, -a, -b), _clause(p, -a, b), _clause(p, a, -b)]
    else:
        raise EncodingError(f"unsupported gate {op!r}")
    return [c for c in dict.fromkeys(raw) if not c.is_tautology]


@dataclass(frozen=True)
class TseitinResult:
    formula: CnfFormula
    aux_vars: tuple[tuple[int, BoolExpr], ...]
    root: Literal | None

    @property
    def root_var(self) -> int | None:
        return None if self.root is None else self.root.var


def _constant_false(n: int) -> tuple[int, Literal]:
    return n + 1, Literal(n + 1)


def tseitin_encode(e: BoolExpr) -> TseitinResult:
    net = build_network(e)
    if net.constant is not None:
        if net.constant:
            return TseitinResult(CnfFormula(net.num_inputs), (), None)
        aux, lit = _constant_false(net.num_inputs)
        cnf = CnfFormula(aux, (Clause((lit,)), Clause((-lit,))))
        return TseitinResult(cnf, ((aux, Const(0)),), None)
    clauses: list[Clause] = []
    for gate in net.gates:
        clauses.extend(gate_clauses(Literal(gate.aux), gate.op, gate.operands))
    clauses.append(Clause((net.root,)))
    aux_vars = tuple((g.aux, g.source) for g in net.gates)
    return TseitinResult(CnfFormula(net.num_vars, tuple(clauses)), aux_vars, net.root)


# --- e-CNF ----------------------------------------------------------------


def equivalence_to_esop(p: Literal, op: str, operands: Sequence[Literal]) -> EsopClause:
    """Rewrite ``p <=> op(operands)`` as a single ESOP clause.

    and: ``~p ^ (l1 & l2 & ...)``
    or:  ``p ^ (~l1 & ~l2 & ...)``
    xor: ``1 ^ p ^ l1 ^ l2 ^ ...`` with complemented operands folded into the constant
    """
    if not operands:
        raise EncodingError("equivalence needs at least one operand")
    if op == "and":
        rhs = product(operands)
        monos = [Monomial((-p,))] + ([rhs] if rhs is not None else [])
        return EsopClause(tuple(monos))
    if op == "or":
        rhs = product(-lit for lit in operands)
        monos = [Monomial((p,))] + ([rhs] if rhs is not None else [])
        return EsopClause(tuple(monos))
    if op == "xor":
        terms = [p, *operands]
        flips = 1 + sum(lit.negated for lit in terms)
        monos = [Monomial.one()] * (flips % 2)
        monos += [Monomial((Literal(lit.var),)) for lit in terms]
        return EsopClause(tuple(monos))
    raise EncodingError(f"unsupported equivalence right-hand side {op!r}")


def clause_to_esop(c: Clause) -> EsopClause:
    """``l1 | ... | lk  ==  1 ^ (~l1 & ... & ~lk)``; a unit clause stays a bare literal."""
    if len(c) == 1:
        return EsopClause((Monomial(c.literals),))
    rhs = product(-lit for lit in c.literals)
    if rhs is None:  # tautology
        return EsopClause((Monomial.one(),))
    return EsopClause((Monomial.one(), rhs))


def cnf_to_ecnf(f: CnfFormula) -> EcnfFormula:
    return EcnfFormula(f.num_vars, tuple(clause_to_esop(c) for c in f.clauses))


def expr_to_ecnf(e: BoolExpr) -> EcnfFormula:
    net = build_network(e)
    if net.constant is not None:
        if net.constant:
            return EcnfFormula(net.num_inputs)
        aux, lit = _constant_false(net.num_inputs)
        return EcnfFormula(aux, (EsopClause((Monomial((lit,)),)), EsopClause((Monomial((-lit,)),))))
    clauses = [equivalence_to_esop(Literal(g.aux), g.op, g.operands) for g in net.gates]
    clauses.append(clause_to_esop(Clause((net.root,))))
    return EcnfFormula(net.num_vars, tuple(clauses))


# --- the benchmark family -------------------------------------------------


@dataclass(frozen=True)
class PhiFamily:
    """One member of the OR-of-AND-groups family.

    ``expr`` ranges over ``2m`` inputs; ``cnf`` and ``ecnf`` add one auxiliary
    variable per group (variable ``2m + i`` for group ``i``).
    """

    m: int
    expr: BoolExpr
    cnf: CnfFormula
    ecnf: EcnfFormula

    @property
    def num_inputs(self) -> int:
        return 2 * self.m


def phi_family(m: int) -> PhiFamily:
    """Build the family member with ``m`` groups.

    Group ``i`` is ``a(2i-1) & a(2i)``, with the second input complemented for
    odd ``i``; odd groups enter the disjunction directly and even groups
    complemented. The wide disjunction over the auxiliaries stays a single
    ``m``-literal clause instead of being binarized.
    """
    if m < 1:
        raise EncodingError("the family needs at least one group")
    n = 2 * m
    expr: BoolExpr | None = None
    big: list[Literal] = []
    cnf_defs: list[Clause] = []
    ecnf_defs: list[EsopClause] = []
    for i in range(1, m + 1):
        a = Literal(2 * i - 1)
        b = Literal(2 * i, negated=bool(i % 2))
        p = Literal(n + i)
        group: BoolExpr = And(Var(a.var), Not(Var(b.var)) if b.negated else Var(b.var))
        term = group if i % 2 else Not(group)
        expr = term if expr is None else Or(expr, term)
        big.append(p if i % 2 else -p)
        cnf_defs.extend(gate_clauses(p, "and", (a, b)))
        ecnf_defs.append(equivalence_to_esop(p, "and", (a, b)))
    wide = Clause(tuple(big))
    cnf = CnfFormula(n + m, (wide, *cnf_defs))
    ecnf = EcnfFormula(n + m, (clause_to_esop(wide), *ecnf_defs))
    return PhiFamily(m, expr, cnf, ecnf)
