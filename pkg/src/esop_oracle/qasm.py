"""OpenQASM 2.0 export for lowered circuits, plus a minimal re-reader."""

from __future__ import annotations

import re

from .circuit import Circuit, GateKind
from .errors import NotLoweredError, ParseError

HEADER = 'OPENQASM 2.0;\ninclude "qelib1.inc";\n'
ALLOWED = frozenset({"x", "h", "t", "tdg", "cx"})


def to_qasm(c: Circuit, *, allow_mcx: bool = False) -> str:
    lines = [HEADER.rstrip("\n"), f"qreg q[{c.num_qubits}];"]
    for g in c.gates:
        if g.kind is GateKind.MCX:
            if not allow_mcx:
                raise NotLoweredError("circuit still holds MCX gates; lower it or pass allow_mcx")
            ctrl = ",".join(("" if p else "~") + f"q[{q}]" for q, p in zip(g.controls, g.polarity))
            lines.append(f"// mcx {ctrl} -> q[{g.target}]")
        elif g.kind is GateKind.CX:
            lines.append(f"cx q[{g.controls[0]}],q[{g.target}];")
        else:
            lines.append(f"{g.kind.value} q[{g.target}];")
    return "\n".join(lines) + "\n"


_GATE_LINE = re.compile(r"^([a-z]+)\s+(q\[\d+\](?:\s*,\s*q\[\d+\])*)\s*;$")


def check_qasm(text: str, expected_qubits: int | None = None) -> dict[str, int]:
    """Validate emitted QASM and return per-gate-name counts.

    Checks the header, a single ``q`` register, that every gate is in
    {x, h, t, tdg, cx} and that every index fits the declared register.
    """
    body = [ln.strip() for ln in text.splitlines()]
    body = [ln for ln in body if ln and not ln.startswith("//")]
    if body[:2] != ["OPENQASM 2.0;", 'include "qelib1.inc";']:
        raise ParseError("missing OpenQASM 2.0 header")
    reg = re.fullmatch(r"qreg q\[(\d+)\];", body[2]) if len(body) > 2 else None
    if reg is None:
        raise ParseError("expected a single 'qreg q[N];' declaration", line=3)
    size = int(reg.group(1))
    if expected_qubits is not None and size != expected_qubits:
        raise ParseError(f"register holds {size} qubits, expected {expected_qubits}")
    counts: dict[str, int] = {}
    for lineno, line in enumerate(body[3:], start=4):
        match = _GATE_LINE.match(line)
        if match is None:
            raise ParseError(f"unrecognised statement {line!r}", line=lineno)
        name = match.group(1)
        if name not in ALLOWED:
            raise ParseError(f"gate {name!r} outside the Clifford+T set", line=lineno)
        indices = [int(i) for i in re.findall(r"q\[(\d+)\]", match.group(2))]
        if len(indices) != (2 if name == "cx" else 1):
            raise ParseError(f"wrong operand count for {name}", line=lineno)
        if any(i >= size for i in indices):
            raise ParseError("qubit index outside register", line=lineno)
        counts[name] = counts.get(name, 0) + 1
    return counts
