from __future__ import annotations

import itertools

import numpy as np
import pytest

from esop_oracle.circuit import MCX, POLARITY, Circuit, GateKind, QubitRegistry, count_gates, depth
from esop_oracle.errors import CapacityError, InputError
from esop_oracle.mcx import (
    AccountingMode,
    ancillas_needed,
    ccx_gates,
    decompose_mcx,
    lower,
    mcx_cost,
    rccx_gates,
    required_pool,
)
from esop_oracle.simulator import run


def _permutation_check(m: int, polarity: tuple[bool, ...]) -> None:
    """The lowered gate maps every clean-ancilla basis state like the ideal MCX."""
    controls, target = list(range(m)), m
    anc = ancillas_needed(m)
    reg = QubitRegistry(m + 1, 0, anc)
    c = lower(Circuit(reg, (MCX(controls, target, polarity),)))
    for j in range(1 << (m + 1)):
        fire = all(((j >> q) & 1) == int(p) for q, p in zip(controls, polarity))
        out = run(c, j).amplitudes
        expected = j ^ (1 << target) if fire else j
        assert abs(out[expected] - 1) < 1e-12
        assert np.sum(np.abs(out) ** 2) - abs(out[expected]) ** 2 < 1e-20


@pytest.mark.parametrize("m", range(2, 11))
def test_closed_form_counts(m):
    pool = list(range(m + 1, m + 1 + ancillas_needed(m)))
    counts = count_gates(decompose_mcx(MCX(list(range(m)), m), pool))
    cost = mcx_cost(m)
    assert (counts.h + counts.t + counts.cx, counts.h, counts.t, counts.cx) == (cost.total, cost.h, cost.t, cost.cx)
    assert counts.x == 0
    assert cost.ancilla == m - 2


def test_ccx_sequence():
    gates = ccx_gates(0, 1, 2)
    counts = count_gates(gates)
    assert len(gates) == 15
    assert (counts.h, counts.t, counts.cx) == (2, 7, 6)
    assert depth(gates) == 11


def test_rccx_budget():
    counts = count_gates(rccx_gates(0, 1, 2))
    assert (counts.h, counts.t, counts.cx) == (2, 4, 3)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_functional_all_positive(m):
    _permutation_check(m, (True,) * m)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_functional_every_polarity(m):
    for polarity in itertools.product((True, False), repeat=m):
        _permutation_check(m, polarity)


def test_negative_controls_add_tagged_flips():
    gates = decompose_mcx(MCX([0, 1, 2], 3, [True, False, False]), [4])
    flips = [g for g in gates if g.kind is GateKind.X]
    assert len(flips) == 4 and all(g.tag == POLARITY for g in flips)
    assert count_gates(gates, exempt=AccountingMode.PAPER.exempt_tags).total == mcx_cost(3).total


def test_pool_too_small():
    with pytest.raises(CapacityError):
        decompose_mcx(MCX([0, 1, 2, 3], 4), [5])


def test_pool_skips_gate_qubits():
    with pytest.raises(CapacityError):
        decompose_mcx(MCX([0, 1, 2], 3), [0])


def test_cost_below_two_controls():
    with pytest.raises(InputError):
        mcx_cost(1)


def test_lower_records_arities():
    reg = QubitRegistry(5, 0, 2)
    c = Circuit(reg, (MCX([0, 1], 2), MCX([0, 1, 2, 3], 4)))
    assert required_pool(c.gates) == 2
    low = lower(c)
    assert low.is_lowered()
    assert low.lowered_arities == (2, 4)


def test_mode_exempt_tags():
    assert AccountingMode.PHYSICAL.exempt_tags == frozenset()
    assert AccountingMode("paper").exempt_tags == {POLARITY}
