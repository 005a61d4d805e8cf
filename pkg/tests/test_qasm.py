from __future__ import annotations

import pytest

from esop_oracle.circuit import MCX, Circuit, QubitRegistry, count_gates
from esop_oracle.errors import NotLoweredError, ParseError
from esop_oracle.grover import assemble_grover
from esop_oracle.mcx import lower
from esop_oracle.oracle import synthesize_oracle
from esop_oracle.qasm import ALLOWED, HEADER, check_qasm, to_qasm


def test_oracle_round_trip(ex_ecnf):
    c = synthesize_oracle(ex_ecnf).lowered
    text = to_qasm(c)
    assert text.startswith(HEADER)
    counts = check_qasm(text, c.num_qubits)
    assert set(counts) <= ALLOWED
    gc = count_gates(c)
    assert counts.get("cx", 0) == gc.cx
    assert counts.get("t", 0) + counts.get("tdg", 0) == gc.t
    assert counts.get("h", 0) == gc.h and counts.get("x", 0) == gc.x


def test_grover_only_clifford_t(ex_cnf):
    c = lower(assemble_grover(ex_cnf, iterations=1).circuit)
    assert set(check_qasm(to_qasm(c), c.num_qubits)) <= ALLOWED


def test_deterministic(ex_cnf):
    c = synthesize_oracle(ex_cnf).lowered
    assert to_qasm(c) == to_qasm(synthesize_oracle(ex_cnf).lowered)


def test_mcx_refused_unless_allowed():
    c = Circuit(QubitRegistry(3), (MCX([0, 1], 2, [True, False]),))
    with pytest.raises(NotLoweredError):
        to_qasm(c)
    text = to_qasm(c, allow_mcx=True)
    assert "// mcx q[0],~q[1] -> q[2]" in text
    assert check_qasm(text) == {}


@pytest.mark.parametrize(
    "text",
    [
        "qreg q[2];\nx q[0];\n",
        HEADER + "qreg q[2];\nccx q[0],q[1],q[2];\n",
        HEADER + "qreg q[2];\nx q[2];\n",
        HEADER + "qreg q[2];\ncx q[0];\n",
        HEADER + "x q[0];\n",
    ],
)
def test_checker_rejects(text):
    with pytest.raises(ParseError):
        check_qasm(text)


def test_register_size_checked(ex_ecnf):
    c = synthesize_oracle(ex_ecnf).lowered
    with pytest.raises(ParseError):
        check_qasm(to_qasm(c), c.num_qubits + 1)
