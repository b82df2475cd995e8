"""Command-line interface.

Subcommands: spectrum, cycle, sweep, tables, validate.  All physical
inputs are given in I/O units (nm, K, eV); computation is SI internally.
Output is CSV (RFC-4180: header row, comma, dot decimal, LF) or JSON
(UTF-8, no NaN -- failed sweep cells carry a message string instead).
Outputs contain no timestamps, so re-running a command with the same
configuration reproduces the file byte for byte.

Exit codes: 0 success, 1 validation-suite failure, 2 configuration error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import tables as tables_mod
from . import validate as validate_mod
from .cycles import (CycleKind, CycleResult, CycleSpec, LengthVariation,
                     PositionVariation, StrengthVariation, carnot_run,
                     otto_run)
from .errors import ConfigError, QwellError, ValidationError
from .physconst import to_ev
from .spectrum import (ImpuritySpec, SpectrumMethod, WellSpec, build_spectrum,
                       solve_spectrum_numerical)
from .sweep import (AxisParam, CellError, SweepAxis, default_workers,
                    phase_regions, run_sweep, summarize)

NM = 1e-9

_METHODS = {
    "numerical": SpectrumMethod.NUMERICAL,
    "weak1": SpectrumMethod.WEAK_PERTURB1,
    "weak2": SpectrumMethod.WEAK_PERTURB2,
    "strong1": SpectrumMethod.STRONG_PERTURB1,
    "bare": SpectrumMethod.BARE_ISW,
}

_AXIS_PARAMS = {
    "p": AxisParam.IMPURITY_POSITION,
    "length-nm": AxisParam.WELL_LENGTH,
    "t-hot": AxisParam.HOT_TEMPERATURE,
    "f": AxisParam.IMPURITY_STRENGTH,
    "f-pair": AxisParam.STRENGTH_PAIR_MAGNITUDE,
}


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.17g}"
    return str(x)


def energy_display(energy_ev: float) -> str:
    """Human-readable energy: ueV below 1 meV, meV otherwise."""
    if abs(energy_ev) < 1e-3:
        return f"{energy_ev * 1e6:.6g} ueV"
    return f"{energy_ev * 1e3:.6g} meV"


def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, sort_keys=False) + "\n"


def _load_config(args: argparse.Namespace, argv: list[str]):
    """Apply a JSON config file as defaults; explicit flags win."""
    path = getattr(args, "config", None)
    if not path:
        return args
    try:
        with open(path, encoding="utf-8") as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object of option: value pairs")
    known = vars(args)
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest not in known:
            raise ConfigError(f"unknown config key: {key}")
        flag = "--" + key
        if any(tok == flag or tok.startswith(flag + "=") for tok in argv):
            continue  # explicit flag overrides config
        setattr(args, dest, value)
    return args


def _spectrum_rows(args) -> tuple[list[str], list[list]]:
    well = WellSpec(args.length_nm * NM)
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in _METHODS:
            raise ConfigError(f"unknown method {m!r}; choose from {sorted(_METHODS)}")
    if args.p_scan:
        lo, hi, steps = args.p_scan
        ps = list(np.linspace(lo, hi, int(steps)))
    else:
        ps = [args.p]
    header = ["method", "p", "n", "kL", "energy_ev", "energy_display"]
    two = len(methods) == 2
    if two:
        header.append(f"rel_diff_vs_{methods[0]}")
    rows: list[list] = []
    scale = well.energy_scale
    for p in ps:
        ref_energies = None
        for mi, mname in enumerate(methods):
            imp = ImpuritySpec(args.f, float(p))
            sp = build_spectrum(well, imp, _METHODS[mname], args.n_max, args.tol)
            for (n, e) in sp.levels:
                kl = math.sqrt(e / scale) if e >= 0.0 else None
                row = [mname, float(p), n, kl, to_ev(e), energy_display(to_ev(e))]
                if two:
                    row.append(None if mi == 0 else
                               abs(e / ref_energies[n - 1] - 1.0))
                rows.append(row)
            if sp.bound_state is not None:
                row = [mname, float(p), 0, None, to_ev(sp.bound_state),
                       energy_display(to_ev(sp.bound_state))]
                if two:
                    row.append(None)
                rows.append(row)
            if mi == 0:
                ref_energies = sp.energies
    return header, rows


def cmd_spectrum(args) -> int:
    header, rows = _spectrum_rows(args)
    if args.format == "json":
        payload = [dict(zip(header, (None if isinstance(v, float) and math.isnan(v)
                                     else v for v in row))) for row in rows]
        _write_text(args.out, _json_text(payload))
    else:
        _write_text(args.out, _csv_text(header, rows))
    return 0


def _cycle_spec(args) -> CycleSpec:
    kind = CycleKind(args.cycle)
    method = _METHODS[args.method]
    if args.varied == "strength":
        if args.f_hot is None or args.f_cold is None:
            raise ConfigError("strength-varied cycles need --f-hot and --f-cold")
        varied = StrengthVariation(args.f_hot, args.f_cold)
    elif args.varied == "length":
        if args.length_hot_nm is None or args.length_cold_nm is None:
            raise ConfigError("length-varied cycles need --length-hot-nm and --length-cold-nm")
        varied = LengthVariation(args.length_hot_nm * NM, args.length_cold_nm * NM)
    elif args.varied == "position":
        if args.p_hot is None or args.p_cold is None:
            raise ConfigError("position-varied cycles need --p-hot and --p-cold")
        varied = PositionVariation(args.p_hot, args.p_cold)
    else:
        raise ConfigError(f"unknown varied parameter {args.varied!r}")
    return CycleSpec(
        cycle=kind, varied=varied, t_hot=args.t_hot, t_cold=args.t_cold,
        fixed_f=args.f, fixed_p=args.p,
        fixed_length=None if args.length_nm is None else args.length_nm * NM,
        method=method)


def _run_cycle(spec: CycleSpec, args) -> CycleResult:
    if spec.cycle is CycleKind.OTTO:
        return otto_run(spec, args.n_max, args.tail_tol)
    return carnot_run(spec, args.n_max, args.tail_tol,
                      enforce_reversibility=args.enforce_reversibility)


def _cycle_record(result: CycleResult) -> dict:
    rec = {
        "q_in_ev": to_ev(result.q_in),
        "q_out_ev": to_ev(result.q_out),
        "work_ev": to_ev(result.work),
        "work_display": energy_display(to_ev(result.work)),
        "phase": result.phase.value,
        "merit": result.merit,
        "units": {"energy": "eV", "temperature": "K", "length": "nm"},
    }
    if result.reversibility_residual is not None:
        rec["reversibility_residual"] = result.reversibility_residual
    return rec


def cmd_cycle(args) -> int:
    spec = _cycle_spec(args)
    result = _run_cycle(spec, args)
    rec = _cycle_record(result)
    if args.format == "csv":
        header = list(rec)
        header.remove("units")
        _write_text(args.out, _csv_text(header, [[rec[k] for k in header]]))
    else:
        _write_text(args.out, _json_text(rec))
    return 0


def _parse_axis(text: str) -> SweepAxis:
    parts = text.split(":")
    if len(parts) != 4:
        raise ConfigError(f"axis must be name:lo:hi:steps, got {text!r}")
    name, lo, hi, steps = parts
    if name not in _AXIS_PARAMS:
        raise ConfigError(f"unknown axis parameter {name!r}; choose from {sorted(_AXIS_PARAMS)}")
    param = _AXIS_PARAMS[name]
    lo, hi = float(lo), float(hi)
    if param is AxisParam.WELL_LENGTH:
        lo, hi = lo * NM, hi * NM
    return SweepAxis(param, lo, hi, int(steps))


def _axis_out_values(axis: SweepAxis) -> np.ndarray:
    vals = axis.values
    return vals / NM if axis.param is AxisParam.WELL_LENGTH else vals


def _summary_record(summary) -> dict:
    def ev(x):
        return None if x is None else to_ev(x)

    return {
        "w_max_ev": ev(summary.w_max),
        "eta_max": summary.eta_max,
        "w_at_eta_max_ev": ev(summary.w_at_eta_max),
        "abs_w_max_ev": ev(summary.abs_w_max),
        "cop_max": summary.cop_max,
        "abs_w_at_cop_max_ev": ev(summary.abs_w_at_cop_max),
        "phase_census": {
            (k.value if hasattr(k, "value") else str(k)): v
            for k, v in summary.phase_census.items()},
    }


def cmd_sweep(args) -> int:
    template = _cycle_spec(args)
    ax = _parse_axis(args.axis_x)
    ay = _parse_axis(args.axis_y)
    grid = run_sweep(template, ax, ay, n_max=args.n_max,
                     tail_tol=args.tail_tol, workers=args.workers)
    xs = _axis_out_values(ax)
    ys = _axis_out_values(ay)
    header = [f"x_{ax.param.value}", f"y_{ay.param.value}", "q_in_ev",
              "q_out_ev", "w_ev", "phase", "merit", "error"]
    rows = []
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            cell = grid.cell(ix, iy)
            if isinstance(cell, CellError):
                rows.append([float(x), float(y), None, None, None, "error",
                             None, cell.message])
            else:
                rows.append([float(x), float(y), to_ev(cell.q_in),
                             to_ev(cell.q_out), to_ev(cell.work),
                             cell.phase.value, cell.merit, None])
    summary = _summary_record(summarize(grid))
    if args.format == "json":
        payload = {"cells": [dict(zip(header, row)) for row in rows],
                   "summary": summary}
        _write_text(args.out, _json_text(payload))
    else:
        _write_text(args.out, _csv_text(header, rows))
        sidecar = (args.out + ".summary.json") if args.out and args.out != "-" else None
        _write_text(sidecar, _json_text(summary))
    return 0


def cmd_tables(args) -> int:
    rows = tables_mod.run_table(args.table, steps=args.steps,
                                n_max=args.n_max, workers=args.workers)
    header = ["table", "label", "unit", "reference", "computed",
              "computed_ev", "rel_dev", "status", "note"]
    data = [[r.table, r.label, r.unit, r.reference, r.computed, r.computed_ev,
             r.rel_dev, r.status, r.note] for r in rows]
    if args.format == "json":
        _write_text(args.out, _json_text([dict(zip(header, row)) for row in data]))
    else:
        _write_text(args.out, _csv_text(header, data))
    return 0


def cmd_validate(args) -> int:
    results, ok = validate_mod.run_all(fault=args.inject_fault)
    lines = []
    for name, passed, detail in results:
        tag = "PASS" if passed else "FAIL"
        if "[info]" in name:
            tag = "INFO"
        lines.append(f"{tag:4s}  {name:28s}  {detail}")
    report = "\n".join(lines) + "\n"
    sys.stdout.write(report)
    if args.out:
        payload = [{"check": n, "passed": p, "detail": d} for n, p, d in results]
        _write_text(args.out, _json_text({"checks": payload, "all_passed": ok}))
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qwell",
        description="Spectra and quantum Otto/Carnot cycles for a 1-D box "
                    "with a delta impurity.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON file of option defaults; flags override")
        p.add_argument("--out", help="output path ('-' = stdout, default)")
        p.add_argument("--format", choices=("csv", "json"), default=None)
        p.add_argument("--n-max", type=int, default=200)
        p.add_argument("--tail-tol", type=float, default=1e-12)

    ps = sub.add_parser("spectrum", help="dump energy levels")
    common(ps)
    ps.add_argument("--length-nm", type=float, required=True)
    ps.add_argument("--f", type=float, required=True)
    ps.add_argument("--p", type=float)
    ps.add_argument("--p-scan", nargs=3, type=float, metavar=("LO", "HI", "STEPS"))
    ps.add_argument("--methods", default="numerical")
    ps.add_argument("--tol", type=float, default=1e-12)
    ps.set_defaults(func=cmd_spectrum, default_format="csv")

    def cycle_flags(p):
        p.add_argument("--cycle", choices=("otto", "carnot"), required=True)
        p.add_argument("--varied", choices=("strength", "length", "position"),
                       required=True)
        p.add_argument("--t-hot", type=float, required=True)
        p.add_argument("--t-cold", type=float, default=1.5)
        p.add_argument("--f-hot", type=float)
        p.add_argument("--f-cold", type=float)
        p.add_argument("--length-hot-nm", type=float)
        p.add_argument("--length-cold-nm", type=float)
        p.add_argument("--p-hot", type=float)
        p.add_argument("--p-cold", type=float)
        p.add_argument("--f", type=float)
        p.add_argument("--p", type=float)
        p.add_argument("--length-nm", type=float)
        p.add_argument("--method", choices=sorted(_METHODS), default="weak2")
        p.add_argument("--enforce-reversibility", action="store_true")

    pc = sub.add_parser("cycle", help="run a single cycle")
    common(pc)
    cycle_flags(pc)
    pc.set_defaults(func=cmd_cycle, default_format="json")

    pw = sub.add_parser("sweep", help="evaluate a cycle over a 2-D grid")
    common(pw)
    cycle_flags(pw)
    pw.add_argument("--axis-x", required=True,
                    help="name:lo:hi:steps with name in "
                         "{p, length-nm, t-hot, f, f-pair}")
    pw.add_argument("--axis-y", required=True)
    pw.add_argument("--workers", type=int, default=None,
                    help="worker processes; default $QWELL_WORKERS or 1")
    pw.set_defaults(func=cmd_sweep, default_format="csv")

    pt = sub.add_parser("tables", help="run a built-in reference-table preset")
    common(pt)
    pt.add_argument("table", choices=tables_mod.TABLE_IDS)
    pt.add_argument("--steps", type=int, default=101)
    pt.add_argument("--workers", type=int, default=None)
    pt.set_defaults(func=cmd_tables, default_format="csv")

    pv = sub.add_parser("validate", help="run the cross-module invariant suite")
    common(pv)
    pv.add_argument("--inject-fault", choices=("flip-qout",),
                    help="negative control: corrupt one check input")
    pv.set_defaults(func=cmd_validate, default_format="csv")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(argv)
        args = _load_config(args, argv)
        if args.format is None:
            args.format = args.default_format
        if getattr(args, "workers", None) is None and hasattr(args, "workers"):
            args.workers = default_workers()
        return args.func(args)
    except (ConfigError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except QwellError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
