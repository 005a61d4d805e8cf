"""Dense statevector simulation.

Qubit ``q`` is bit ``q`` of the basis index (qubit 0 is least significant).
The amplitude array is viewed as a ``[2] * n`` tensor in C order, so qubit
``q`` lives on axis ``n - 1 - q``.
"""

from __future__ import annotations

import os
from typing import Callable, Sequence, Union

import numpy as np

from .circuit import Circuit, Gate, GateKind
from .errors import CapacityError, CircuitError

SIM_CAP = int(os.environ.get("ESOP_ORACLE_SIM_CAP", "24"))

_SQRT1_2 = 1 / np.sqrt(2)
_PHASE = {GateKind.T: np.exp(1j * np.pi / 4), GateKind.TDG: np.exp(-1j * np.pi / 4)}


class StateVector:
    def __init__(self, amplitudes: np.ndarray, *, cap: int | None = None):
        amplitudes = np.asarray(amplitudes, dtype=np.complex128)
        n = int(amplitudes.size).bit_length() - 1
        if amplitudes.ndim != 1 or amplitudes.size != 1 << n:
            raise CircuitError("amplitude count must be a power of two")
        cap = SIM_CAP if cap is None else cap
        if n > cap:
            raise CapacityError(f"{n} qubits exceed the simulation cap of {cap}")
        self.num_qubits = n
        self.amplitudes = amplitudes

    @classmethod
    def basis(cls, num_qubits: int, index: int = 0, *, cap: int | None = None) -> StateVector:
        cap = SIM_CAP if cap is None else cap
        if num_qubits > cap:
            raise CapacityError(f"{num_qubits} qubits exceed the simulation cap of {cap}")
        amps = np.zeros(1 << num_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps, cap=cap)

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy(), cap=self.num_qubits)

    def norm(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def _view(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.num_qubits) if self.num_qubits else self.amplitudes

    def _index(self, fixed: dict[int, int]) -> tuple:
        idx = [slice(None)] * self.num_qubits
        for q, bit in fixed.items():
            idx[self.num_qubits - 1 - q] = slice(bit, bit + 1)
        return tuple(idx)

    def apply_gate(self, g: Gate) -> StateVector:
        """Apply ``g`` in place and return ``self``."""
        n = self.num_qubits
        if max(g.qubits) >= n:
            raise CircuitError(f"{g} addresses a qubit outside a {n}-qubit state")
        psi = self._view()
        t = g.target
        if g.kind is GateKind.H:
            lo, hi = self._index({t: 0}), self._index({t: 1})
            a = psi[lo].copy()
            b = psi[hi]
            psi[lo] = (a + b) * _SQRT1_2
            psi[hi] = (a - b) * _SQRT1_2
        elif g.kind in _PHASE:
            psi[self._index({t: 1})] *= _PHASE[g.kind]
        else:
            fixed = {c: int(pos) for c, pos in zip(g.controls, g.polarity)}
            sub = psi[self._index(fixed)]
            sub[...] = np.flip(sub, axis=n - 1 - t).copy()
        return self


def run(c: Circuit, initial: Union[int, StateVector] = 0, *, cap: int | None = None) -> StateVector:
    if isinstance(initial, StateVector):
        if initial.num_qubits != c.num_qubits:
            raise CircuitError(f"state has {initial.num_qubits} qubits, circuit needs {c.num_qubits}")
        state = initial.copy()
    else:
        state = StateVector.basis(c.num_qubits, initial, cap=cap)
    for g in c.gates:
        state.apply_gate(g)
    return state


Predicate = Union[Callable[[tuple], bool], np.ndarray, Sequence[bool]]


def search_marginal(s: StateVector, num_search: int) -> np.ndarray:
    """Probability of each basis state of the low ``num_search`` qubits."""
    probs = s.probabilities().reshape(-1, 1 << num_search)
    return probs.sum(axis=0)


def probability_mass(s: StateVector, predicate: Predicate, num_search: int | None = None) -> float:
    """Total probability of search-register outcomes accepted by ``predicate``.

    ``predicate`` is either a boolean mask indexed by the search-register
    basis index, or a callable on bit tuples ``(q0, q1, ...)``.
    """
    k = s.num_qubits if num_search is None else num_search
    marginal = search_marginal(s, k)
    if callable(predicate):
        mask = np.array([bool(predicate(tuple((i >> b) & 1 for b in range(k)))) for i in range(1 << k)])
    else:
        mask = np.asarray(predicate, dtype=bool)
    return float(marginal[mask].sum())


def unitary(c: Circuit) -> np.ndarray:
    """Dense matrix of ``c``; column ``j`` is the image of basis state ``j``."""
    dim = 1 << c.num_qubits
    return np.stack([run(c, j).amplitudes for j in range(dim)], axis=1)
