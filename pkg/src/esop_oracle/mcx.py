"""Clifford+T lowering of multi-controlled X gates.

A CᵐX with ``m >= 3`` uses ``m - 2`` clean ancillas. The ancillas are loaded
by a ladder of relative-phase Toffolis (9 gates, 4 T each), the target is
flipped by one full 15-gate Toffoli, and the ladder is undone by the inverse
relative-phase blocks, which cancel the phases the loading step introduced.
That gives ``15 + 2 * 9 * (m - 2) = 18m - 21`` gates in total, split as
``4m - 6`` H, ``8m - 9`` T/T† and ``6m - 6`` CX.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Sequence

from .circuit import (
    CX,
    POLARITY,
    Circuit,
    Gate,
    GateKind,
    H,
    T,
    Tdg,
    X,
    invert_gates,
)
from .errors import CapacityError, InputError


class AccountingMode(str, enum.Enum):
    PHYSICAL = "physical"
    PAPER = "paper"

    @property
    def exempt_tags(self) -> frozenset[str]:
        return frozenset({POLARITY}) if self is AccountingMode.PAPER else frozenset()


@dataclass(frozen=True)
class McxCost:
    total: int
    h: int
    t: int
    cx: int
    ancilla: int

    def __post_init__(self):
        if self.total != self.h + self.t + self.cx:
            raise InputError("total must equal h + t + cx")


def mcx_cost(m: int) -> McxCost:
    if m < 2:
        raise InputError(f"closed form needs m >= 2 controls, got {m}")
    return McxCost(18 * m - 21, 4 * m - 6, 8 * m - 9, 6 * m - 6, max(0, m - 2))


def ancillas_needed(m: int) -> int:
    return max(0, m - 2)


def ccx_gates(a: int, b: int, target: int) -> list[Gate]:
    """Exact Toffoli: 2 H, 7 T/T†, 6 CX."""
    return [
        H(target),
        CX(b, target),
        Tdg(target),
        CX(a, target),
        T(target),
        CX(b, target),
        Tdg(target),
        CX(a, target),
        T(b),
        T(target),
        H(target),
        CX(a, b),
        T(a),
        Tdg(b),
        CX(a, b),
    ]


def rccx_gates(a: int, b: int, target: int) -> list[Gate]:
    """Toffoli up to a diagonal phase on (a, b, target): 2 H, 4 T/T†, 3 CX."""
    return [
        H(target),
        T(target),
        CX(b, target),
        Tdg(target),
        CX(a, target),
        T(target),
        CX(b, target),
        Tdg(target),
        H(target),
    ]


def decompose_mcx(g: Gate, pool: Sequence[int]) -> list[Gate]:
    """Lower one CCX/MCX into {X, H, T, T†, CX}.

    Each negative control is wrapped in a pair of X gates tagged
    :data:`POLARITY`. ``pool`` must provide at least ``m - 2`` qubits in
    state 0 that are disjoint from the gate; they are returned to 0.
    """
    if g.kind is not GateKind.MCX:
        return [g]
    controls, target = list(g.controls), g.target
    m = len(controls)
    need = ancillas_needed(m)
    free = [q for q in pool if q not in g.qubits]
    if len(free) < need:
        raise CapacityError(f"C^{m}X needs {need} ancillas, pool offers {len(free)}")
    anc = free[:need]

    if m == 2:
        core = ccx_gates(controls[0], controls[1], target)
    else:
        ladder = rccx_gates(controls[0], controls[1], anc[0])
        for i in range(1, m - 2):
            ladder += rccx_gates(anc[i - 1], controls[i + 1], anc[i])
        core = ladder + ccx_gates(anc[-1], controls[-1], target) + invert_gates(ladder)

    flips = [X(c, POLARITY) for c, pos in zip(controls, g.polarity) if not pos]
    return flips + core + flips


def required_pool(gates: Sequence[Gate]) -> int:
    return max((ancillas_needed(len(g.controls)) for g in gates if g.kind is GateKind.MCX), default=0)


def lower(c: Circuit) -> Circuit:
    """Replace every MCX using the registry's decomposition pool."""
    pool = list(c.registry.decomp_ancillas)
    out: list[Gate] = []
    arities = list(c.lowered_arities)
    for g in c.gates:
        if g.kind is GateKind.MCX:
            out.extend(decompose_mcx(g, pool))
            arities.append(len(g.controls))
        else:
            out.append(g)
    return Circuit(c.registry, tuple(out), tuple(arities))
