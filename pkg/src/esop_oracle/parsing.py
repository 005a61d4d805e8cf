"""Readers and writers for DIMACS CNF, ``.ecnf`` text and infix expressions.

The ``.ecnf`` format is DIMACS-like::

    c comment
    p ecnf <nvars> <nclauses>
    1 ^ T ^ 2 -3 0

One clause per line. Monomials are separated by ``^``; a monomial is a run of
signed integers (negative means complemented) or the single token ``T`` for
the constant 1. Every clause line ends with ``0``.
"""

from __future__ import annotations

import enum
import re
import warnings
from pathlib import Path
from typing import Union

from .errors import InputError, ParseError
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
)

Text = Union[str, bytes]


class SourceFormat(str, enum.Enum):
    DIMACS_CNF = "dimacs-cnf"
    ECNF_TEXT = "ecnf-text"
    EXPR = "expr"

    @classmethod
    def from_path(cls, path: str | Path) -> SourceFormat:
        suffix = Path(path).suffix.lower()
        if suffix in (".cnf", ".dimacs"):
            return cls.DIMACS_CNF
        if suffix == ".ecnf":
            return cls.ECNF_TEXT
        if suffix in (".expr", ".bool", ".txt"):
            return cls.EXPR
        raise InputError(f"cannot infer input format from suffix {suffix!r}; pass --format")


def _decode(text: Text) -> str:
    if isinstance(text, bytes):
        try:
            return text.decode("ascii")
        except UnicodeDecodeError:
            try:
                return text.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise ParseError(f"input is not UTF-8: {exc}") from None
    return text


def _parse_header(tokens: list[str], kind: str, lineno: int) -> tuple[int, int]:
    if len(tokens) != 4 or tokens[1] != kind:
        raise ParseError(f"malformed header, expected 'p {kind} <nvars> <nclauses>'", line=lineno)
    try:
        nvars, nclauses = int(tokens[2]), int(tokens[3])
    except ValueError:
        raise ParseError("header counts must be integers", line=lineno) from None
    if nvars < 0 or nclauses < 0:
        raise ParseError("header counts must be non-negative", line=lineno)
    return nvars, nclauses


def _int_token(token: str, nvars: int, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"unknown token {token!r}", line=lineno) from None
    if abs(value) > nvars:
        raise ParseError(f"literal {value} out of range for {nvars} variables", line=lineno)
    return value


# --- DIMACS ---------------------------------------------------------------


def parse_dimacs(text: Text) -> CnfFormula:
    header = None
    clauses: list[Clause] = []
    pending: list[int] = []
    pending_line = 0
    for lineno, raw in enumerate(_decode(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break  # SATLIB end marker
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", line=lineno)
            header = _parse_header(tokens, "cnf", lineno)
            continue
        if header is None:
            raise ParseError("clause before 'p cnf' header", line=lineno)
        for token in tokens:
            value = _int_token(token, header[0], lineno)
            if value == 0:
                if not pending:
                    raise ParseError("empty clause", line=lineno)
                try:
                    clauses.append(Clause(tuple(Literal.from_int(v) for v in pending)))
                except InputError as exc:
                    raise ParseError(str(exc), line=lineno) from None
                pending = []
            else:
                if not pending:
                    pending_line = lineno
                pending.append(value)
    if header is None:
        raise ParseError("missing 'p cnf' header")
    if pending:
        raise ParseError("clause missing terminating 0", line=pending_line)
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, body has {len(clauses)}")
    return CnfFormula(header[0], tuple(clauses))


def write_dimacs(f: CnfFormula) -> str:
    lines = [f"p cnf {f.num_vars} {len(f.clauses)}"]
    for clause in f.clauses:
        lines.append(" ".join(str(lit.to_int()) for lit in clause.literals) + " 0")
    return "\n".join(lines) + "\n"


# --- e-CNF text -----------------------------------------------------------


def _parse_monomial(group: list[str], nvars: int, lineno: int) -> Monomial | None:
    if group == ["T"]:
        return Monomial.one()
    if "T" in group:
        raise ParseError("'T' must stand alone as a monomial", line=lineno)
    values = [_int_token(tok, nvars, lineno) for tok in group]
    if 0 in values:
        raise ParseError("'0' may only terminate the clause", line=lineno)
    literals = [Literal.from_int(v) for v in values]
    if len(set(literals)) != len(literals):
        raise ParseError("repeated literal inside monomial", line=lineno)
    if len({lit.var for lit in literals}) != len(literals):
        warnings.warn(f"line {lineno}: dropping constant-0 monomial {' '.join(group)}", stacklevel=3)
        return None
    return Monomial(tuple(literals))


def parse_ecnf(text: Text) -> EcnfFormula:
    header = None
    clauses: list[EsopClause] = []
    for lineno, raw in enumerate(_decode(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", line=lineno)
            header = _parse_header(tokens, "ecnf", lineno)
            continue
        if header is None:
            raise ParseError("clause before 'p ecnf' header", line=lineno)
        if tokens[-1] != "0":
            raise ParseError("clause missing terminating 0", line=lineno)
        body = tokens[:-1]
        if not body:
            raise ParseError("empty clause", line=lineno)
        groups: list[list[str]] = [[]]
        for tok in body:
            if tok == "^":
                groups.append([])
            else:
                groups[-1].append(tok)
        if any(not g for g in groups):
            raise ParseError("empty monomial around '^'", line=lineno)
        monomials = [m for g in groups if (m := _parse_monomial(g, header[0], lineno)) is not None]
        try:
            clauses.append(EsopClause(tuple(monomials)))
        except InputError as exc:
            raise ParseError(str(exc), line=lineno) from None
    if header is None:
        raise ParseError("missing 'p ecnf' header")
    if len(clauses) != header[1]:
        raise ParseError(f"header declares {header[1]} clauses, body has {len(clauses)}")
    return EcnfFormula(header[0], tuple(clauses))


def _format_monomial(m: Monomial) -> str:
    if m.is_constant_one:
        return "T"
    return " ".join(str(lit.to_int()) for lit in m.literals)


def write_ecnf(f: EcnfFormula) -> str:
    lines = [f"p ecnf {f.num_vars} {len(f.clauses)}"]
    for clause in f.clauses:
        lines.append(" ^ ".join(_format_monomial(m) for m in clause.monomials) + " 0")
    return "\n".join(lines) + "\n"


# --- infix expressions ----------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<->)|(->)|(x\d+)|([01])|([!&|^()]))")

# loosest binding first
_LEVELS = (("<->", Iff), ("->", Implies), ("^", Xor), ("|", Or), ("&", And))


def _tokenize(text: str) -> list[tuple[str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if match is None:
            offset = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[offset]!r}", offset=offset)
        tokens.append((match.group(match.lastindex), match.start(match.lastindex)))
        pos = match.end()
    return tokens


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def offset(self) -> int:
        return self.tokens[self.pos][1] if self.pos < len(self.tokens) else len(self.text)

    def take(self) -> str:
        tok = self.tokens[self.pos][0]
        self.pos += 1
        return tok

    def binary(self, level: int) -> BoolExpr:
        if level == len(_LEVELS):
            return self.unary()
        op, node = _LEVELS[level]
        left = self.binary(level + 1)
        while self.peek() == op:
            self.take()
            left = node(left, self.binary(level + 1))
        return left

    def unary(self) -> BoolExpr:
        tok = self.peek()
        if tok == "!":
            self.take()
            return Not(self.unary())
        if tok == "(":
            self.take()
            inner = self.binary(0)
            if self.peek() != ")":
                raise ParseError("expected ')'", offset=self.offset())
            self.take()
            return inner
        if tok is None:
            raise ParseError("unexpected end of input", offset=self.offset())
        if tok in ("0", "1"):
            self.take()
            return Const(int(tok))
        if tok.startswith("x"):
            index = int(tok[1:])
            if index < 1:
                raise ParseError("variables are numbered from x1", offset=self.offset())
            self.take()
            return Var(index)
        raise ParseError(f"unexpected token {tok!r}", offset=self.offset())


def parse_expr(text: Text) -> BoolExpr:
    """Parse ``! & | ^ -> <->`` expressions over ``x<int>`` and ``0``/``1``.

    Precedence, tightest first: ``!``, ``&``, ``|``, ``^``, ``->``, ``<->``.
    All binary operators associate to the left.
    """
    source = _decode(text)
    parser = _ExprParser(source)
    tree = parser.binary(0)
    if parser.peek() is not None:
        raise ParseError(f"unexpected token {parser.peek()!r}", offset=parser.offset())
    return tree


_SYMBOL = {And: "&", Or: "|", Xor: "^", Iff: "<->", Implies: "->"}


def write_expr(e: BoolExpr) -> str:
    """Fully parenthesised text that :func:`parse_expr` reads back identically."""
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Not):
        return "!" + write_expr(e.child)
    return f"({write_expr(e.left)} {_SYMBOL[type(e)]} {write_expr(e.right)})"


def read_source(path: str | Path, fmt: SourceFormat | None = None):
    path = Path(path)
    fmt = SourceFormat(fmt) if fmt is not None else SourceFormat.from_path(path)
    data = path.read_bytes()
    if fmt is SourceFormat.DIMACS_CNF:
        return parse_dimacs(data)
    if fmt is SourceFormat.ECNF_TEXT:
        return parse_ecnf(data)
    return parse_expr(data)
