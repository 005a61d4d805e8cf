"""Command-line driver: parse, encode, synthesize, lower, then simulate/emit/report.

Exit status: 0 success, 1 usage or other error, 2 UNSAT under --grover,
3 parse error, 4 capacity exceeded, 5 internal invariant breach.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import CapacityError, OracleError, ParseError, UnsatError
from .formula import BRUTE_FORCE_CAP, BoolExpr, CnfFormula, EcnfFormula, Formula, truth_table
from .grover import assemble_grover
from .mcx import AccountingMode, lower
from .oracle import synthesize_oracle
from .parsing import SourceFormat, read_source
from .qasm import check_qasm, to_qasm
from .resources import (
    ComparisonRow,
    ResourceEstimate,
    comparison_csv,
    comparison_json,
    measure,
    single_csv,
    single_json,
)
from .simulator import SIM_CAP, StateVector, probability_mass, run
from .transform import cnf_to_ecnf, expr_to_ecnf, phi_family, tseitin_encode

EXIT_OK, EXIT_ERROR, EXIT_UNSAT, EXIT_PARSE, EXIT_CAPACITY, EXIT_INTERNAL = 0, 1, 2, 3, 4, 5


class InvariantBreach(OracleError):
    """A simulated circuit disagreed with brute-force evaluation."""


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple[str, ...] = ()
    format: SourceFormat | None = None
    encoding: str | None = None
    accounting: AccountingMode = AccountingMode.PHYSICAL
    emit: str = "none"
    grover: bool = False
    iterations: str = "auto"
    models: int | None = None
    simulate: bool = False
    sim_cap: int = SIM_CAP
    output: str | None = None
    figure: str | None = None
    no_figure: bool = False
    allow_mcx: bool = False
    phi_family: tuple[int, ...] = ()
    jobs: int = 1


@dataclass
class Unit:
    """One (instance, encoding) pair after encoding."""

    name: str
    encoding: str
    formula: Formula


@dataclass
class InstanceResult:
    name: str
    lines: list[str] = field(default_factory=list)
    estimates: dict[str, ResourceEstimate] = field(default_factory=dict)
    qasm: dict[str, str] = field(default_factory=dict)
    unsat: bool = False


ENC_LABEL = {"cnf": "CNF", "ecnf": "e-CNF"}


def _encode(name: str, source, encoding: str | None) -> list[Unit]:
    if isinstance(source, CnfFormula):
        wanted = encoding or "cnf"
        table = {"cnf": lambda: source, "ecnf": lambda: cnf_to_ecnf(source)}
    elif isinstance(source, EcnfFormula):
        wanted = encoding or "ecnf"
        if wanted != "ecnf":
            raise OracleError("an e-CNF input can only be compiled with --encoding ecnf")
        table = {"ecnf": lambda: source}
    elif isinstance(source, BoolExpr):
        wanted = encoding or "both"
        table = {"cnf": lambda: tseitin_encode(source).formula, "ecnf": lambda: expr_to_ecnf(source)}
    else:
        raise OracleError(f"unsupported source {type(source).__name__}")
    keys = ["cnf", "ecnf"] if wanted == "both" else [wanted]
    return [Unit(name, k, table[k]()) for k in keys]


def _verify_oracle(f: Formula, circuit, cap: int) -> None:
    """Uniform superposition over the inputs must come back phase-marked with clean ancillas."""
    n = f.num_vars
    if circuit.num_qubits > cap:
        raise CapacityError(f"oracle needs {circuit.num_qubits} qubits, simulation cap is {cap}")
    signs = np.where(truth_table(f), -1.0, 1.0)
    amps = np.zeros(1 << circuit.num_qubits, dtype=complex)
    amps[: 1 << n] = 1 / np.sqrt(1 << n)
    out = run(circuit, StateVector(amps, cap=cap)).amplitudes
    expected = np.zeros_like(out)
    expected[: 1 << n] = signs / np.sqrt(1 << n)
    err = float(np.abs(out - expected).max())
    if err > 1e-9:
        raise InvariantBreach(f"oracle phase table deviates by {err:.3e}")


def process(cfg: RunConfig, name: str, source) -> InstanceResult:
    result = InstanceResult(name)
    for unit in _encode(name, source, cfg.encoding):
        label = ENC_LABEL[unit.encoding]
        if cfg.grover:
            models = cfg.models
            if models is None and unit.formula.num_vars > BRUTE_FORCE_CAP:
                raise CapacityError(
                    f"{unit.formula.num_vars} variables exceed the model-counting cap; pass --models M"
                )
            k = None if cfg.iterations == "auto" else int(cfg.iterations)
            try:
                grover = assemble_grover(unit.formula, models=models, iterations=k)
            except UnsatError:
                result.lines.append(f"{name} [{label}]: UNSAT (no satisfying assignment)")
                result.unsat = True
                continue
            circuit = lower(grover.circuit)
            plan = grover.plan
            result.lines.append(
                f"{name} [{label}]: grover n={plan.n_search} M={plan.M} k={plan.k} "
                f"theta={plan.theta:.9f}" + (" (more than half the space is marked)" if plan.over_half else "")
            )
            if cfg.simulate:
                if circuit.num_qubits > cfg.sim_cap:
                    raise CapacityError(f"grover circuit needs {circuit.num_qubits} qubits, cap is {cfg.sim_cap}")
                state = run(circuit, cap=cfg.sim_cap)
                p = probability_mass(state, truth_table(unit.formula), unit.formula.num_vars)
                if abs(p - plan.success_probability) > 1e-9:
                    raise InvariantBreach(f"simulated success {p} differs from sin^2((2k+1)theta)")
                result.lines.append(f"{name} [{label}]: success probability {p:.9f} k={plan.k}")
        else:
            oracle = synthesize_oracle(unit.formula)
            circuit = oracle.lowered
            if cfg.simulate:
                _verify_oracle(unit.formula, circuit, cfg.sim_cap)
                result.lines.append(f"{name} [{label}]: oracle phases verified")
        est = measure(circuit, cfg.accounting)
        result.estimates[unit.encoding] = est
        result.lines.append(
            f"{name} [{label}]: #q={est.qubits} #CX={est.cx} #T={est.t} #D={est.depth} "
            f"total={est.total_cliffordT} ({est.mode.value})"
        )
        if cfg.emit == "qasm":
            text = to_qasm(circuit, allow_mcx=cfg.allow_mcx)
            check_qasm(text, circuit.num_qubits)
            result.qasm[unit.encoding] = text
    return result


def _load(cfg: RunConfig, path: str):
    return Path(path).stem, read_source(path, cfg.format)


def _process_path(cfg: RunConfig, path: str) -> InstanceResult:
    name, source = _load(cfg, path)
    return process(cfg, name, source)


def _process_phi(cfg: RunConfig, m: int) -> InstanceResult:
    fam = phi_family(m)
    name = f"phi_m{m}"
    if cfg.encoding in (None, "both"):
        sources = [("cnf", fam.cnf), ("ecnf", fam.ecnf)]
    else:
        sources = [(cfg.encoding, fam.cnf if cfg.encoding == "cnf" else fam.ecnf)]
    merged = InstanceResult(name)
    for enc, formula in sources:
        part = process(RunConfig(**{**cfg.__dict__, "encoding": enc}), name, formula)
        merged.lines += part.lines
        merged.estimates.update(part.estimates)
        merged.qasm.update(part.qasm)
        merged.unsat |= part.unsat
    return merged


def execute(cfg: RunConfig) -> tuple[int, list[InstanceResult]]:
    tasks = [(_process_path, p) for p in cfg.inputs] + [(_process_phi, m) for m in cfg.phi_family]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_call, [(fn, cfg, arg) for fn, arg in tasks]))
    else:
        results = [fn(cfg, arg) for fn, arg in tasks]
    status = EXIT_UNSAT if any(r.unsat for r in results) else EXIT_OK
    return status, results


def _call(job):
    fn, cfg, arg = job
    return fn(cfg, arg)


def _write(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).parent.mkdir(parents=True, exist_ok=True)
        Path(path).write_text(text)


def write_artifacts(cfg: RunConfig, results: list[InstanceResult]) -> list[Path]:
    written: list[Path] = []
    if cfg.emit == "qasm":
        items = [(r.name, enc, text) for r in results for enc, text in r.qasm.items()]
        if cfg.output is None:
            for _, _, text in items:
                sys.stdout.write(text)
        elif len(items) == 1:
            _write(cfg.output, items[0][2])
            written.append(Path(cfg.output))
        else:
            outdir = Path(cfg.output)
            outdir.mkdir(parents=True, exist_ok=True)
            for name, enc, text in items:
                target = outdir / f"{name}.{enc}.qasm"
                target.write_text(text)
                written.append(target)
        return written
    if cfg.emit not in ("report-csv", "report-json"):
        return written
    paired = [r for r in results if {"cnf", "ecnf"} <= r.estimates.keys()]
    if paired and len(paired) == len(results):
        rows = [ComparisonRow(r.name, r.estimates["cnf"], r.estimates["ecnf"]) for r in paired]
        text = comparison_csv(rows) if cfg.emit == "report-csv" else comparison_json(rows)
    else:
        rows = []
        entries = [(r.name, ENC_LABEL[enc], est) for r in results for enc, est in r.estimates.items()]
        text = single_csv(entries) if cfg.emit == "report-csv" else single_json(entries)
    _write(cfg.output, text)
    if cfg.output is not None:
        written.append(Path(cfg.output))
    figure = cfg.figure or (str(Path(cfg.output).with_suffix(".png")) if cfg.output else None)
    if rows and figure and not cfg.no_figure:
        from .plotting import plot_comparison, plot_phi_family

        if cfg.phi_family and not cfg.inputs:
            written.append(plot_phi_family(cfg.phi_family, rows, figure))
        else:
            written.append(plot_comparison(rows, figure))
    return written


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _phi_range(text: str) -> tuple[int, ...]:
    lo, _, hi = text.partition(":")
    lo_i, hi_i = int(lo), int(hi or lo)
    if lo_i < 1 or hi_i < lo_i:
        raise argparse.ArgumentTypeError("expected M or LO:HI with 1 <= LO <= HI")
    return tuple(range(lo_i, hi_i + 1))


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="esop-oracle", description="Compile SAT instances into Grover phase oracles (CNF vs e-CNF).")
    src = p.add_argument_group("input")
    src.add_argument("--input", "-i", action="append", default=[], help="instance file (repeatable)")
    src.add_argument("--format", choices=[f.value for f in SourceFormat], help="default: from the file suffix")
    src.add_argument("--phi-family", type=_phi_range, metavar="LO:HI", help="generate the OR-of-AND-groups family")
    p.add_argument("--encoding", choices=["cnf", "ecnf", "both"])
    p.add_argument("--accounting", choices=[m.value for m in AccountingMode], default="physical")
    p.add_argument("--emit", choices=["qasm", "report-csv", "report-json", "none"], default="none")
    p.add_argument("--grover", action="store_true", help="build the full Grover circuit")
    p.add_argument("--iterations", default="auto", help="'auto' or an explicit iteration count")
    p.add_argument("--models", type=int, help="model count M, skipping brute-force counting")
    p.add_argument("--simulate", action="store_true", help="check the circuit by exact simulation")
    p.add_argument("--sim-cap", type=int, default=SIM_CAP, help="qubit limit for --simulate")
    p.add_argument("--output", "-o", help="artifact path (directory when several QASM files result)")
    p.add_argument("--figure", help="figure path for reports (default: output path with .png)")
    p.add_argument("--no-figure", action="store_true")
    p.add_argument("--allow-mcx", action="store_true", help="write MCX gates as QASM comments")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers across input files")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.iterations != "auto" and not args.iterations.isdigit():
        raise OracleError("--iterations takes 'auto' or a non-negative integer")
    return RunConfig(
        inputs=tuple(args.input),
        format=SourceFormat(args.format) if args.format else None,
        encoding=args.encoding,
        accounting=AccountingMode(args.accounting),
        emit=args.emit,
        grover=args.grover,
        iterations=args.iterations,
        models=args.models,
        simulate=args.simulate,
        sim_cap=args.sim_cap,
        output=args.output,
        figure=args.figure,
        no_figure=args.no_figure,
        allow_mcx=args.allow_mcx,
        phi_family=args.phi_family or (),
        jobs=max(1, args.jobs),
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.input and not args.phi_family:
        parser.error("give --input or --phi-family")
    try:
        cfg = config_from_args(args)
        status, results = execute(cfg)
        for r in results:
            for line in r.lines:
                print(line, file=sys.stderr if cfg.emit != "none" and cfg.output is None else sys.stdout)
        write_artifacts(cfg, results)
        return status
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (InvariantBreach, AssertionError) as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (OracleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
