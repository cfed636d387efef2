"""Command-line front end.

Commands: ``report`` (full design report), ``sweep`` (one parameter over a
value list), ``verify`` (gate-algebra and schedule verification), and
``simulate`` (cycle simulation with event-trace export).

Exit codes: 0 success, 1 config error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from . import qgates, schedule
from .config import KNOWN_KEYS, ToolConfig, load_config
from .errors import ScheduleConflictError, SpiderwebError
from .report import SWEEP_FIELDS, build_report, render_text, sweep_record
from .units import parse_quantity, si_format

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_VERIFY = 2


def _common_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="config file (omit for the reference defaults)")
    parser.add_argument(
        "--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
        help="override one config key (repeatable); KEY may be section.key or a short alias",
    )
    parser.add_argument("--format", choices=("text", "json", "csv"), default="text")
    parser.add_argument(
        "--pin-cp", metavar="FARADS", default=None,
        help="pin the parasitic capacitance used in the power model (e.g. 700fF)",
    )
    parser.add_argument("--out", metavar="PATH", help="write the output to a file instead of stdout")


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(args) -> tuple[ToolConfig, float | None]:
    if args.config and not os.path.exists(args.config):
        sys.stderr.write(f"note: config file {args.config!r} not found, using defaults\n")
    config = load_config(args.config, args.overrides)
    pinned = parse_quantity(args.pin_cp) if args.pin_cp else None
    return config, pinned


def _cmd_report(args) -> int:
    config, pinned = _load(args)
    doc = build_report(config, pinned_parasitic_f=pinned)
    if args.format == "json":
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["key", "value"])
        for key, value in sorted(_flatten(doc).items()):
            writer.writerow([key, value])
        _emit(args, buf.getvalue())
    else:
        _emit(args, render_text(doc))
    return EXIT_OK


def _flatten(doc, prefix: str = "") -> dict[str, object]:
    flat: dict[str, object] = {}
    for key, value in doc.items():
        path = f"{prefix}.{key}" if prefix else str(key)
        if isinstance(value, dict):
            flat.update(_flatten(value, path))
        else:
            flat[path] = value
    return flat


def _cmd_sweep(args) -> int:
    base_overrides = list(args.overrides)
    values = [v.strip() for v in args.values.split(",") if v.strip()]
    records = []
    for value in values:
        config = load_config(args.config, base_overrides + [f"{args.parameter}={value}"])
        pinned = parse_quantity(args.pin_cp) if args.pin_cp else None
        records.append(sweep_record(args.parameter, value, config, pinned_parasitic_f=pinned))
    if args.format == "json":
        _emit(args, json.dumps(records, indent=2, sort_keys=True) + "\n")
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=SWEEP_FIELDS)
        writer.writeheader()
        for record in records:
            writer.writerow(record)
        _emit(args, buf.getvalue())
    return EXIT_OK


def _cmd_verify(args) -> int:
    config, _ = _load(args)
    if args.dump_unitary:
        return _dump_unitary(args, args.dump_unitary, ())
    checks: list[dict[str, object]] = []

    for check in qgates.verify_identities(corrupt=args.corrupt):
        checks.append({
            "check": f"identity:{check.name}",
            "passed": check.passed,
            "residual": check.residual,
        })
    for kind in ("X", "Z"):
        ok = qgates.verify_plaquette(kind)
        checks.append({"check": f"plaquette:{kind}", "passed": ok, "residual": None})

    table = schedule.default_step_table()
    census = table.census()
    expected = {
        "shuttle_round_trips": schedule.CYCLE_SHUTTLES,
        "one_qubit_gates": schedule.CYCLE_ONE_QUBIT_GATES,
        "exchanges": schedule.CYCLE_EXCHANGES,
        "readout_phases": 1,
        "steps": 16,
    }
    checks.append({
        "check": "schedule:census",
        "passed": census == expected,
        "residual": None,
        "detail": census,
    })
    by_index = {s.index: s for s in table.steps}
    solo_ok = all(
        n in by_index and by_index[n].home_shuttling_qubits() == ("D1",) for n in (3, 13)
    )
    checks.append({"check": "schedule:steps-3-13-single-shuttle", "passed": solo_ok, "residual": None})

    try:
        trace = schedule.simulate_cycle(table, config.timing)
        formula = schedule.cycle_time(config.timing, config.array, "parallel").total_s
        sim_ok = trace.makespan_s == formula
        detail = {"makespan_s": trace.makespan_s, "formula_s": formula}
    except ScheduleConflictError as exc:
        sim_ok = False
        detail = {"conflict": str(exc)}
    checks.append({"check": "schedule:conflict-free", "passed": sim_ok, "residual": None, "detail": detail})

    all_ok = all(c["passed"] for c in checks)
    if args.format == "json":
        _emit(args, json.dumps({"passed": all_ok, "checks": checks}, indent=2, sort_keys=True) + "\n")
    else:
        width = max(len(str(c["check"])) for c in checks)
        lines = []
        for c in checks:
            status = "pass" if c["passed"] else "FAIL"
            residual = "" if c["residual"] is None else f"  residual {c['residual']:.3g}"
            lines.append(f"{str(c['check']):<{width}}  {status}{residual}")
        lines.append("all checks passed" if all_ok else "verification FAILED")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if all_ok else EXIT_VERIFY


def _cmd_simulate(args) -> int:
    config, _ = _load(args)
    table = schedule.load_step_table(args.table) if args.table else schedule.default_step_table()
    try:
        trace = schedule.simulate_cycle(table, config.timing)
    except ScheduleConflictError as exc:
        sys.stderr.write(f"schedule conflict: {exc}\n")
        return EXIT_VERIFY
    if args.format == "csv":
        _emit(args, trace.to_csv())
    elif args.format == "json":
        doc = {
            "makespan_s": trace.makespan_s,
            "counters": trace.counters,
            "annotations": list(trace.annotations),
            "events": [
                {"time_s": e.time_s, "step": e.step, "qubit": e.qubit, "op": e.op, "resource": e.resource}
                for e in trace.events
            ],
        }
        _emit(args, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        lines = [
            f"steps               {trace.counters['steps']}",
            f"shuttle round trips {trace.counters['shuttle_round_trips']}",
            f"one-qubit gates     {trace.counters['one_qubit_gates']}",
            f"exchanges           {trace.counters['exchanges']}",
            f"readout phases      {trace.counters['readout_phases']}",
            f"events              {len(trace.events)}",
            f"makespan            {si_format(trace.makespan_s, 's')}",
        ]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def _dump_unitary(args, name: str, params: tuple[float, ...]) -> int:
    matrix = qgates.gate(name, *params)
    doc = {
        "gate": name,
        "params": list(params),
        "dim": matrix.shape[0],
        "matrix": [[[float(np.real(v)), float(np.imag(v))] for v in row] for row in matrix],
    }
    _emit(args, json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _cmd_dump_unitary(args) -> int:
    return _dump_unitary(args, args.gate, tuple(float(p) for p in args.params))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spiderweb",
        description="Design-space exploration and verification for the spiderweb sparse spin-qubit array.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_report = sub.add_parser("report", help="full design report for one configuration")
    _common_options(p_report)
    p_report.set_defaults(func=_cmd_report)

    p_sweep = sub.add_parser("sweep", help="evaluate derived quantities over one parameter")
    _common_options(p_sweep)
    p_sweep.add_argument("parameter", help=f"config key to sweep (one of: {', '.join(KNOWN_KEYS)})")
    p_sweep.add_argument("values", help="comma-separated value list, SI suffixes allowed")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_verify = sub.add_parser("verify", help="run gate-algebra and schedule verification")
    _common_options(p_verify)
    p_verify.add_argument("--corrupt", choices=("sp-sign",), default=None,
                          help="negative-control hook: inject a known fault")
    p_verify.add_argument("--json", dest="format", action="store_const", const="json",
                          help="shorthand for --format json")
    p_verify.add_argument("--dump-unitary", metavar="GATE", default=None,
                          help="emit the named gate matrix as JSON instead of running checks")
    p_verify.set_defaults(func=_cmd_verify)

    p_sim = sub.add_parser("simulate", help="simulate one unit-cell cycle")
    _common_options(p_sim)
    p_sim.add_argument("--table", metavar="PATH", help="step-table file (omit for the shipped program)")
    p_sim.set_defaults(func=_cmd_simulate)

    p_dump = sub.add_parser("dump-unitary", help="emit a gate matrix as JSON (row-major re/im pairs)")
    p_dump.add_argument("gate")
    p_dump.add_argument("params", nargs="*", help="rotation angle(s) in radians")
    p_dump.add_argument("--out", metavar="PATH")
    p_dump.set_defaults(func=_cmd_dump_unitary)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SpiderwebError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
