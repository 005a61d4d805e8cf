from __future__ import annotations

import pytest

from esop_oracle.circuit import (
    CX,
    KICKBACK,
    MCX,
    POLARITY,
    Circuit,
    Gate,
    GateKind,
    H,
    QubitRegistry,
    T,
    Tdg,
    X,
    controlled_x,
    count_gates,
    depth,
    invert,
)
from esop_oracle.errors import CircuitError


class TestGate:
    @pytest.mark.parametrize(
        "build",
        [
            lambda: Gate(GateKind.CX, 0, (0,)),  # target is control
            lambda: Gate(GateKind.CX, 1, (0,), (False,)),  # negative CX
            lambda: Gate(GateKind.MCX, 2, (0,)),  # single-control MCX
            lambda: Gate(GateKind.H, 1, (0,)),
            lambda: MCX([0, 0], 1),
            lambda: MCX([0, 1], 2, [True]),
            lambda: X(-1),
        ],
    )
    def test_invalid(self, build):
        with pytest.raises(CircuitError):
            build()

    def test_default_polarity_positive(self):
        assert MCX([0, 1], 2).polarity == (True, True)

    def test_inverse(self):
        assert T(0).inverse() == Tdg(0)
        assert Tdg(0).inverse() == T(0)
        assert CX(0, 1).inverse() == CX(0, 1)

    def test_str(self):
        assert str(MCX([0, 1], 2, [True, False])) == "mcx(q0,~q1->q2)"


class TestControlledX:
    def test_arities(self):
        assert controlled_x([], 3) == [X(3)]
        assert controlled_x([1], 3) == [CX(1, 3)]
        assert controlled_x([1], 3, [False]) == [X(1, POLARITY), CX(1, 3), X(1, POLARITY)]
        assert controlled_x([0, 1], 3) == [MCX([0, 1], 3)]


class TestRegistry:
    def test_layout(self):
        r = QubitRegistry(4, 2, 3)
        assert list(r.input_qubits) == [0, 1, 2, 3]
        assert list(r.clause_ancillas) == [4, 5]
        assert list(r.decomp_ancillas) == [6, 7, 8]
        assert r.total == 9 and r.num_ancillas == 5
        assert r.with_pool(1).total == 7


class TestCircuit:
    def test_out_of_range(self):
        with pytest.raises(CircuitError):
            Circuit(QubitRegistry(2), (CX(0, 2),))

    def test_compose_and_invert(self):
        r = QubitRegistry(2)
        a = Circuit(r, (H(0), T(0)))
        b = Circuit(r, (CX(0, 1),))
        assert (a + b).gates == (H(0), T(0), CX(0, 1))
        assert invert(a + b).gates == (CX(0, 1), Tdg(0), H(0))
        with pytest.raises(CircuitError):
            a + Circuit(QubitRegistry(3))

    def test_lowered_flag(self):
        r = QubitRegistry(3)
        assert Circuit(r, (H(0), CX(0, 1))).is_lowered()
        assert not Circuit(r, (MCX([0, 1], 2),)).is_lowered()


class TestCounting:
    def test_counts_and_exemption(self):
        gates = [X(0, POLARITY), H(1, KICKBACK), T(0), Tdg(1), CX(0, 1), MCX([0, 1], 2), X(0, POLARITY)]
        full = count_gates(gates)
        assert (full.x, full.h, full.t, full.cx, full.mcx) == (2, 1, 2, 1, {2: 1})
        assert full.total == 6
        paper = count_gates(gates, exempt={POLARITY})
        assert paper.x == 0 and paper.total == 4

    def test_empty(self):
        assert count_gates([]).total == 0
        assert depth([]) == 0

    def test_depth_asap(self):
        assert depth([H(0), H(1), CX(0, 1), T(2)]) == 2
        assert depth([CX(0, 1), CX(1, 2), CX(2, 3)]) == 3
        assert depth([H(0), MCX([1, 2], 3), H(0)]) == 2
