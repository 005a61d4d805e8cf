from __future__ import annotations

import random
import re
from pathlib import Path

import pytest
from hypothesis import strategies as st

from esop_oracle.formula import (
    BINARY_OPS,
    Clause,
    CnfFormula,
    Const,
    EcnfFormula,
    EsopClause,
    Literal,
    Monomial,
    Not,
    Var,
)
from esop_oracle.parsing import parse_dimacs, parse_ecnf

DATA = Path(__file__).resolve().parent.parent / "data"

EX_CNF_TEXT = "p cnf 4 2\n1 2 -3 0\n-2 3 4 0\n"
EX_ECNF_TEXT = "p ecnf 4 2\n1 ^ T ^ 2 -3 0\n-2 ^ -3 4 0\n"
EX_ECNF_MODELS = [(0, 0, 0, 0), (0, 0, 1, 0), (0, 0, 1, 1), (1, 1, 0, 1)]


@pytest.fixture
def ex_cnf() -> CnfFormula:
    return parse_dimacs(EX_CNF_TEXT)


@pytest.fixture
def ex_ecnf() -> EcnfFormula:
    return parse_ecnf(EX_ECNF_TEXT)


# --- random generators ----------------------------------------------------


def random_expr(rng: random.Random, n: int, depth: int):
    """Random expression over ``x1..xn`` of height at most ``depth``."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.05:
            return Const(rng.randint(0, 1))
        return Var(rng.randint(1, n))
    if rng.random() < 0.15:
        return Not(random_expr(rng, n, depth - 1))
    op = rng.choice(BINARY_OPS)
    return op(random_expr(rng, n, depth - 1), random_expr(rng, n, depth - 1))


def has_connective(e) -> bool:
    if isinstance(e, BINARY_OPS):
        return True
    return isinstance(e, Not) and has_connective(e.child)


def random_cnf(rng: random.Random, n: int, m: int, width: int = 3) -> CnfFormula:
    clauses = []
    for _ in range(m):
        vs = rng.sample(range(1, n + 1), rng.randint(1, min(width, n)))
        clauses.append(Clause(tuple(Literal(v, rng.random() < 0.5) for v in vs)))
    return CnfFormula(n, tuple(clauses))


def random_ecnf(rng: random.Random, n: int, m: int) -> EcnfFormula:
    clauses = []
    while len(clauses) < m:
        monos = []
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.2:
                monos.append(Monomial.one())
                continue
            vs = rng.sample(range(1, n + 1), rng.randint(1, min(2, n)))
            monos.append(Monomial(tuple(Literal(v, rng.random() < 0.5) for v in vs)))
        try:
            clauses.append(EsopClause(tuple(monos)))
        except ValueError:  # everything cancelled
            continue
    return EcnfFormula(n, tuple(clauses))


@st.composite
def expressions(draw, max_vars: int = 5, max_depth: int = 5):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_vars))
    return random_expr(random.Random(seed), n, draw(st.integers(0, max_depth)))


literals = lambda n: st.builds(Literal, st.integers(1, n), st.booleans())  # noqa: E731


@st.composite
def cnf_formulas(draw, max_vars: int = 6, max_clauses: int = 6):
    n = draw(st.integers(1, max_vars))
    clauses = draw(
        st.lists(
            st.lists(literals(n), min_size=1, max_size=4, unique=True).map(lambda ls: Clause(tuple(ls))),
            max_size=max_clauses,
        )
    )
    return CnfFormula(n, tuple(clauses))


@st.composite
def ecnf_formulas(draw, max_vars: int = 6, max_clauses: int = 5):
    n = draw(st.integers(1, max_vars))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_ecnf(random.Random(seed), n, draw(st.integers(0, max_clauses)))


# --- exact extension counting ---------------------------------------------


def _clause_vars(clause) -> set[int]:
    if isinstance(clause, Clause):
        return {lit.var for lit in clause.literals}
    return {lit.var for mono in clause.monomials for lit in mono.literals}


def _count(clauses, cvars, num_vars, bits):
    """Models extending ``bits`` (None = free) by unit propagation and branching."""
    bits = list(bits)
    changed = True
    while changed:
        changed = False
        for clause, vs in zip(clauses, cvars):
            free = [v for v in vs if bits[v - 1] is None]
            if len(free) > 1:
                continue
            if not free:
                if not clause.value([b or 0 for b in bits]):
                    return 0
                continue
            v = free[0]
            outcomes = []
            for guess in (0, 1):
                bits[v - 1] = guess
                outcomes.append(clause.value([b or 0 for b in bits]))
            bits[v - 1] = None
            if not any(outcomes):
                return 0
            if not all(outcomes):
                bits[v - 1] = outcomes.index(1)
                changed = True
    if None not in bits:
        return 1
    v = bits.index(None)
    total = 0
    for guess in (0, 1):
        bits[v] = guess
        total += _count(clauses, cvars, num_vars, bits)
    return total


def extension_counts(f, n: int) -> dict[tuple[int, ...], int]:
    """For every assignment of ``x1..xn``, the number of models of ``f`` extending it."""
    cvars = [_clause_vars(c) for c in f.clauses]
    out = {}
    for i in range(1 << n):
        prefix = tuple((i >> b) & 1 for b in range(n))
        out[prefix] = _count(f.clauses, cvars, f.num_vars, list(prefix) + [None] * (f.num_vars - n))
    return out


# --- acceptance summary ---------------------------------------------------

_CRITERION = re.compile(r"test_criterion_(\d+)_")


def pytest_terminal_summary(terminalreporter):
    outcomes: dict[int, str] = {}
    for status in ("passed", "failed", "error", "skipped"):
        for report in terminalreporter.stats.get(status, []):
            nodeid = getattr(report, "nodeid", "")
            match = _CRITERION.search(nodeid)
            if "test_acceptance" not in nodeid or not match or getattr(report, "when", "call") not in ("call", "setup"):
                continue
            n = int(match.group(1))
            ok = status == "passed"
            if outcomes.get(n) != "FAIL":
                outcomes[n] = "PASS" if ok else "FAIL"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(outcomes):
        terminalreporter.write_line(f"criterion {n}: {outcomes[n]}")
