"""Grover phase-oracle compiler for CNF and ESOP-based (e-CNF) SAT encodings."""

from __future__ import annotations

from .circuit import Circuit, Gate, GateKind, QubitRegistry, count_gates, depth, invert
from .errors import (
    CapacityError,
    CircuitError,
    EncodingError,
    InputError,
    NotLoweredError,
    OracleError,
    ParseError,
    SynthesisError,
    UnsatError,
)
from .formula import (
    BoolExpr,
    Clause,
    CnfFormula,
    EcnfFormula,
    EsopClause,
    Literal,
    Monomial,
    count_models,
    evaluate,
    truth_table,
)
from .grover import GroverPlan, assemble_grover, diffusion, plan_iterations
from .mcx import AccountingMode, decompose_mcx, lower, mcx_cost
from .oracle import OracleCircuit, synthesize_oracle
from .parsing import (
    SourceFormat,
    parse_dimacs,
    parse_ecnf,
    parse_expr,
    read_source,
    write_dimacs,
    write_ecnf,
    write_expr,
)
from .qasm import check_qasm, to_qasm
from .resources import (
    ComparisonRow,
    ResourceEstimate,
    closed_form_equivalence_cost,
    closed_form_phi_family,
    compare,
    measure,
)
from .simulator import StateVector, probability_mass, run
from .transform import cnf_to_ecnf, expr_to_ecnf, phi_family, tseitin_encode

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
