"""Reversible circuit IR: gates over a structured qubit registry."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .errors import CircuitError


class GateKind(str, enum.Enum):
    X = "x"
    H = "h"
    T = "t"
    TDG = "tdg"
    CX = "cx"
    MCX = "mcx"


CLIFFORD_T = frozenset({GateKind.X, GateKind.H, GateKind.T, GateKind.TDG, GateKind.CX})

# Gate tags. POLARITY marks X gates that only flip a control's polarity; the
# paper accounting mode does not charge for them. KICKBACK marks the H pair
# around the phase-flip MCX.
POLARITY = "polarity"
KICKBACK = "kickback"


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    target: int
    controls: tuple[int, ...] = ()
    polarity: tuple[bool, ...] = ()
    tag: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", GateKind(self.kind))
        object.__setattr__(self, "controls", tuple(self.controls))
        pol = tuple(self.polarity) if self.polarity else (True,) * len(self.controls)
        object.__setattr__(self, "polarity", pol)
        if len(pol) != len(self.controls):
            raise CircuitError("one polarity flag per control is required")
        if self.target < 0 or any(c < 0 for c in self.controls):
            raise CircuitError("qubit indices must be non-negative")
        if len(set(self.controls)) != len(self.controls):
            raise CircuitError(f"repeated control in {self}")
        if self.target in self.controls:
            raise CircuitError(f"target q{self.target} is also a control")
        arity = len(self.controls)
        if self.kind is GateKind.CX:
            if arity != 1 or not pol[0]:
                raise CircuitError("CX takes exactly one positive control")
        elif self.kind is GateKind.MCX:
            if arity < 2:
                raise CircuitError("MCX needs at least two controls; use CX or X")
        elif arity:
            raise CircuitError(f"{self.kind.value} takes no controls")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (*self.controls, self.target)

    def inverse(self) -> Gate:
        if self.kind is GateKind.T:
            return replace(self, kind=GateKind.TDG)
        if self.kind is GateKind.TDG:
            return replace(self, kind=GateKind.T)
        return self

    def __str__(self):
        if not self.controls:
            return f"{self.kind.value}(q{self.target})"
        ctrl = ",".join(("" if p else "~") + f"q{c}" for c, p in zip(self.controls, self.polarity))
        return f"{self.kind.value}({ctrl}->q{self.target})"


def X(q: int, tag: str | None = None) -> Gate:
    return Gate(GateKind.X, q, tag=tag)


def H(q: int, tag: str | None = None) -> Gate:
    return Gate(GateKind.H, q, tag=tag)


def T(q: int) -> Gate:
    return Gate(GateKind.T, q)


def Tdg(q: int) -> Gate:
    return Gate(GateKind.TDG, q)


def CX(control: int, target: int) -> Gate:
    return Gate(GateKind.CX, target, (control,))


def MCX(controls: Sequence[int], target: int, polarity: Sequence[bool] = ()) -> Gate:
    return Gate(GateKind.MCX, target, tuple(controls), tuple(polarity))


def controlled_x(controls: Sequence[int], target: int, polarity: Sequence[bool] = ()) -> list[Gate]:
    """Smallest gate list for an X on ``target`` conditioned on ``controls``.

    Zero controls give X, one positive control gives CX, and a single
    negative control is X-conjugated. Two or more stay a native MCX.
    """
    polarity = tuple(polarity) or (True,) * len(controls)
    if not controls:
        return [X(target)]
    if len(controls) == 1:
        c = controls[0]
        if polarity[0]:
            return [CX(c, target)]
        return [X(c, POLARITY), CX(c, target), X(c, POLARITY)]
    return [MCX(controls, target, polarity)]


@dataclass(frozen=True)
class QubitRegistry:
    """Qubit layout: inputs, then one ancilla per clause, then the MCX pool."""

    num_inputs: int
    num_clause_ancillas: int = 0
    num_decomp_ancillas: int = 0

    @property
    def input_qubits(self) -> range:
        return range(0, self.num_inputs)

    @property
    def clause_ancillas(self) -> range:
        start = self.num_inputs
        return range(start, start + self.num_clause_ancillas)

    @property
    def decomp_ancillas(self) -> range:
        start = self.num_inputs + self.num_clause_ancillas
        return range(start, start + self.num_decomp_ancillas)

    @property
    def num_ancillas(self) -> int:
        return self.num_clause_ancillas + self.num_decomp_ancillas

    @property
    def total(self) -> int:
        return self.num_inputs + self.num_ancillas

    def with_pool(self, size: int) -> QubitRegistry:
        return replace(self, num_decomp_ancillas=size)


@dataclass(frozen=True)
class Circuit:
    registry: QubitRegistry
    gates: tuple[Gate, ...] = ()
    # control counts of the MCX gates that lowering replaced
    lowered_arities: tuple[int, ...] = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        total = self.registry.total
        for g in self.gates:
            if max(g.qubits) >= total:
                raise CircuitError(f"{g} addresses a qubit outside the {total}-qubit registry")

    @property
    def num_qubits(self) -> int:
        return self.registry.total

    def append(self, g: Gate) -> Circuit:
        return Circuit(self.registry, (*self.gates, g), self.lowered_arities)

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.registry, (*self.gates, *gates), self.lowered_arities)

    def compose(self, other: Circuit) -> Circuit:
        if other.registry != self.registry:
            raise CircuitError("cannot compose circuits over different registries")
        return Circuit(self.registry, self.gates + other.gates, self.lowered_arities + other.lowered_arities)

    __add__ = compose

    def is_lowered(self) -> bool:
        return all(g.kind in CLIFFORD_T for g in self.gates)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


def invert(c: Circuit) -> Circuit:
    return Circuit(c.registry, tuple(g.inverse() for g in reversed(c.gates)), c.lowered_arities)


def invert_gates(gates: Sequence[Gate]) -> list[Gate]:
    return [g.inverse() for g in reversed(gates)]


def depth(c: Circuit | Sequence[Gate]) -> int:
    """ASAP layer count; every gate occupies one layer on all qubits it touches."""
    level: dict[int, int] = {}
    deepest = 0
    for g in c:
        layer = 1 + max((level.get(q, 0) for q in g.qubits), default=0)
        for q in g.qubits:
            level[q] = layer
        deepest = max(deepest, layer)
    return deepest


@dataclass(frozen=True)
class GateCounts:
    x: int = 0
    h: int = 0
    t: int = 0  # T and Tdg pooled
    cx: int = 0
    mcx: dict[int, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        """Clifford+T gate count (MCX gates are not included)."""
        return self.x + self.h + self.t + self.cx


def count_gates(c: Circuit | Sequence[Gate], *, exempt: Iterable[str] = ()) -> GateCounts:
    """Exact per-kind counts. Gates whose tag is in ``exempt`` are skipped."""
    exempt = set(exempt)
    kinds: Counter = Counter()
    mcx: Counter = Counter()
    for g in c:
        if g.tag is not None and g.tag in exempt:
            continue
        if g.kind is GateKind.MCX:
            mcx[len(g.controls)] += 1
        else:
            kinds[g.kind] += 1
    return GateCounts(
        x=kinds[GateKind.X],
        h=kinds[GateKind.H],
        t=kinds[GateKind.T] + kinds[GateKind.TDG],
        cx=kinds[GateKind.CX],
        mcx=dict(sorted(mcx.items())),
    )
