"""Resource estimation for lowered oracles and the closed-form cost model."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from decimal import Decimal
from fractions import Fraction
from typing import Iterable, Sequence

from .circuit import KICKBACK, Circuit, GateKind, count_gates, depth
from .errors import EncodingError, NotLoweredError
from .formula import BRUTE_FORCE_CAP, CnfFormula, EcnfFormula, Formula, count_models
from .mcx import AccountingMode, ancillas_needed, mcx_cost
from .oracle import synthesize_oracle

# The XOR-equivalence reference tally charges its C⁴X 55 gates and one ancilla;
# the ancilla ladder gives 51 gates and two.
REFERENCE_C4X_COST = 55
REFERENCE_C4X_ANCILLA = 1


@dataclass(frozen=True)
class ResourceEstimate:
    qubits: int
    cx: int
    t: int
    h: int
    x: int
    total_cliffordT: int
    depth: int
    clause_ancillas: int
    decomp_ancillas_pool: int
    decomp_ancillas_cumulative: int
    kickback_h: int
    mode: AccountingMode

    @property
    def qubits_with_phase_qubit(self) -> int:
        """Qubit count if the phase flip used its own dedicated qubit."""
        return self.qubits + 1

    def as_dict(self) -> dict:
        d = asdict(self)
        d["mode"] = self.mode.value
        d["qubits_with_phase_qubit"] = self.qubits_with_phase_qubit
        return d


def measure(c: Circuit, mode: AccountingMode = AccountingMode.PHYSICAL) -> ResourceEstimate:
    if not c.is_lowered():
        raise NotLoweredError("lower the circuit before measuring it")
    mode = AccountingMode(mode)
    counts = count_gates(c, exempt=mode.exempt_tags)
    kickback = sum(1 for g in c.gates if g.tag == KICKBACK and g.kind is GateKind.H)
    return ResourceEstimate(
        qubits=c.registry.total,
        cx=counts.cx,
        t=counts.t,
        h=counts.h,
        x=counts.x,
        total_cliffordT=counts.total,
        depth=depth(c),
        clause_ancillas=c.registry.num_clause_ancillas,
        decomp_ancillas_pool=c.registry.num_decomp_ancillas,
        decomp_ancillas_cumulative=sum(ancillas_needed(m) for m in c.lowered_arities),
        kickback_h=kickback,
        mode=mode,
    )


def estimate_formula(f: Formula, mode: AccountingMode = AccountingMode.PHYSICAL) -> ResourceEstimate:
    return measure(synthesize_oracle(f).lowered, mode)


# --- closed forms ---------------------------------------------------------


def closed_form_equivalence_cost(op_kind: str, encoding: str) -> tuple[int, int]:
    """(Clifford+T gates, ancillas) for one ``p <=> a op b`` proposition."""
    op, enc = op_kind.lower(), encoding.lower().replace("-", "")
    if op not in ("and", "or", "xor") or enc not in ("cnf", "ecnf"):
        raise EncodingError(f"no closed form for ({op_kind}, {encoding})")
    ccx, c3x = mcx_cost(2), mcx_cost(3)
    if enc == "ecnf":
        if op == "xor":
            return 3 + 1, 0  # three CX and one X
        return ccx.total + 1 + 1, 0  # CCX, CX, X
    if op == "xor":
        # four 3-literal clauses, then a C⁴X joining them
        return 4 * c3x.total + REFERENCE_C4X_COST, 4 + 4 * c3x.ancilla + REFERENCE_C4X_ANCILLA
    # three clause ancillas; two C³X and one CCX computed and uncomputed, plus three X
    return 2 * (c3x.total + ccx.total) + 3, 3 + 2 * c3x.ancilla


def closed_form_phi_family(m: int, encoding: str) -> int:
    """Grouped-accounting oracle cost for the family member with ``m`` groups.

    Compute and uncompute each cost ``m`` propositions plus the wide clause
    (a CᵐX and one X); the phase flip is one more CᵐX.
    """
    if m < 2:
        raise EncodingError("closed forms need m >= 2")
    per_prop, _ = closed_form_equivalence_cost("and", encoding)
    wide = mcx_cost(m).total + 1
    return 2 * (m * per_prop + wide) + mcx_cost(m).total


def flat_phi_family_cost(m: int, encoding: str) -> int:
    """Paper-mode total of the flat (one ancilla per clause) oracle, kickback H included."""
    if m < 2:
        raise EncodingError("closed forms need m >= 2")
    enc = encoding.lower().replace("-", "")
    if enc == "ecnf":
        return 88 * m - 61 + 2
    if enc == "cnf":
        return 222 * m - 61 + 2
    raise EncodingError(f"unknown encoding {encoding!r}")


# --- comparisons ----------------------------------------------------------

METRICS = (("q", "qubits"), ("CX", "cx"), ("T", "t"), ("D", "depth"))


def improvement(cnf: int, ecnf: int) -> Decimal:
    """``100 * (cnf - ecnf) / cnf`` rounded half-even to two decimals."""
    if cnf == 0:
        return Decimal("0.00")
    hundredths = round(Fraction(10000 * (cnf - ecnf), cnf))
    return Decimal(hundredths).scaleb(-2)


@dataclass(frozen=True)
class ComparisonRow:
    name: str
    cnf: ResourceEstimate
    ecnf: ResourceEstimate

    @property
    def improvements(self) -> dict[str, Decimal]:
        return {key: improvement(getattr(self.cnf, attr), getattr(self.ecnf, attr)) for key, attr in METRICS}

    def fields(self) -> dict[str, object]:
        row: dict[str, object] = {"Name": self.name}
        for side, est in (("CNF", self.cnf), ("eCNF", self.ecnf)):
            for key, attr in METRICS:
                row[f"{side}:#{key}"] = getattr(est, attr)
        for key, value in self.improvements.items():
            row[f"Improv:#{key}"] = f"{value:.2f}"
        return row


def _equisatisfiable(a: Formula, b: Formula) -> bool | None:
    if max(a.num_vars, b.num_vars) > min(20, BRUTE_FORCE_CAP):
        return None
    return (count_models(a)[0] > 0) == (count_models(b)[0] > 0)


def compare(
    name: str,
    f_cnf: Formula,
    f_ecnf: Formula,
    mode: AccountingMode = AccountingMode.PHYSICAL,
    *,
    check: bool = True,
) -> ComparisonRow:
    if check and _equisatisfiable(f_cnf, f_ecnf) is False:
        raise EncodingError(f"{name}: the two encodings are not equisatisfiable")
    return ComparisonRow(name, estimate_formula(f_cnf, mode), estimate_formula(f_ecnf, mode))


def comparison_csv(rows: Iterable[ComparisonRow]) -> str:
    rows = list(rows)
    header = ["Name"] + [f"{side}:#{k}" for side in ("CNF", "eCNF", "Improv") for k, _ in METRICS]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=header, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.fields())
    return buf.getvalue()


def comparison_json(rows: Iterable[ComparisonRow]) -> str:
    payload = [row.fields() for row in rows]
    return json.dumps(payload, indent=2) + "\n"


SINGLE_HEADER = ["Name", "Encoding", "#q", "#CX", "#T", "#D", "#H", "#X", "Total"]


def _single_fields(name: str, encoding: str, est: ResourceEstimate) -> dict[str, object]:
    return dict(
        zip(
            SINGLE_HEADER,
            [name, encoding, est.qubits, est.cx, est.t, est.depth, est.h, est.x, est.total_cliffordT],
        )
    )


def single_csv(entries: Sequence[tuple[str, str, ResourceEstimate]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SINGLE_HEADER, lineterminator="\n")
    writer.writeheader()
    for name, encoding, est in entries:
        writer.writerow(_single_fields(name, encoding, est))
    return buf.getvalue()


def single_json(entries: Sequence[tuple[str, str, ResourceEstimate]]) -> str:
    return json.dumps([_single_fields(*e) for e in entries], indent=2) + "\n"


def encoding_name(f: Formula) -> str:
    return "CNF" if isinstance(f, CnfFormula) else "e-CNF" if isinstance(f, EcnfFormula) else "?"
