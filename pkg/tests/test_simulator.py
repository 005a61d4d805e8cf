from __future__ import annotations

import random
from functools import reduce

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from esop_oracle.circuit import CX, MCX, Circuit, GateKind, H, QubitRegistry, T, Tdg, X
from esop_oracle.errors import CapacityError, CircuitError
from esop_oracle.simulator import StateVector, probability_mass, run, search_marginal, unitary

_I = np.eye(2)
_MATS = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    GateKind.T: np.diag([1, np.exp(1j * np.pi / 4)]),
    GateKind.TDG: np.diag([1, np.exp(-1j * np.pi / 4)]),
}


def dense(g, n: int) -> np.ndarray:
    """Reference matrix built by Kronecker products or explicit permutation."""
    if not g.controls:
        ops = [_MATS[g.kind] if q == g.target else _I for q in reversed(range(n))]
        return reduce(np.kron, ops)
    m = np.zeros((1 << n, 1 << n), dtype=complex)
    for j in range(1 << n):
        fire = all(((j >> c) & 1) == int(p) for c, p in zip(g.controls, g.polarity))
        m[j ^ (1 << g.target) if fire else j, j] = 1
    return m


def random_gates(rng: random.Random, n: int, count: int):
    gates = []
    for _ in range(count):
        kinds = ["x", "h", "t", "tdg", "cx", "mcx"][: 4 + min(n - 1, 2)]
        kind = rng.choice(kinds)
        qs = rng.sample(range(n), {"cx": 2, "mcx": 3}.get(kind, 1))
        if kind == "x":
            gates.append(X(qs[0]))
        elif kind == "h":
            gates.append(H(qs[0]))
        elif kind == "t":
            gates.append(T(qs[0]))
        elif kind == "tdg":
            gates.append(Tdg(qs[0]))
        elif kind == "cx":
            gates.append(CX(qs[0], qs[1]))
        else:
            gates.append(MCX(qs[:2], qs[2], [rng.random() < 0.5, rng.random() < 0.5]))
    return gates


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_matches_dense_reference(n, seed):
    rng = random.Random(seed)
    gates = random_gates(rng, n, 12)
    c = Circuit(QubitRegistry(n), tuple(gates))
    ref = reduce(lambda acc, g: dense(g, n) @ acc, gates, np.eye(1 << n, dtype=complex))
    assert np.allclose(unitary(c), ref, atol=1e-12)


def test_little_endian():
    s = run(Circuit(QubitRegistry(3), (X(0),)))
    assert s.amplitudes[1] == 1  # qubit 0 is bit 0


def test_norm_preserved():
    rng = random.Random(3)
    c = Circuit(QubitRegistry(6), tuple(random_gates(rng, 6, 200)))
    assert run(c, 5).norm() == pytest.approx(1.0, abs=1e-12)


def test_capacity():
    with pytest.raises(CapacityError):
        StateVector.basis(10, cap=8)
    with pytest.raises(CapacityError):
        run(Circuit(QubitRegistry(9)), cap=8)


def test_bad_amplitudes():
    with pytest.raises(CircuitError):
        StateVector(np.ones(3))


def test_probability_mass_mask_and_callable():
    c = Circuit(QubitRegistry(5), tuple(H(q) for q in range(4)))
    s = run(c)
    mask = np.zeros(16, dtype=bool)
    mask[[0, 4, 12, 11]] = True
    assert probability_mass(s, mask, 4) == pytest.approx(0.25, abs=1e-12)
    assert probability_mass(s, lambda bits: bits[0] == 1, 4) == pytest.approx(0.5, abs=1e-12)
    assert search_marginal(s, 4).sum() == pytest.approx(1.0)


def test_state_mismatch():
    with pytest.raises(CircuitError):
        run(Circuit(QubitRegistry(2)), StateVector.basis(3))
