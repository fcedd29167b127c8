"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .critical import (critical_field, gap_temperature, locate_qpt_x, locate_qpt_y, separable_energy,
                       threshold_temperature)
from .entanglement import report
from .figures import FIGURES, figures
from .model import ModelParams
from .states import ground_state, levels_for, thermal_state
from .sweep import QUANTITIES, PathConsistencyError, SweepError, SweepSpec, run_sweep, to_json, write_csv
from .validate import FAULTS, GRIDS, validate

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--x", type=float, default=0.0, help="anisotropy ratio x (default 0)")
    common.add_argument("--y", type=float, default=0.0, help="reduced magnetic field y (default 0)")
    common.add_argument("--T", type=float, default=0.0, help="temperature; 0 selects the ground state")
    common.add_argument("--out", help="write output to this file (directory for 'figures')")
    common.add_argument("--json", action="store_true", help="emit JSON instead of text/CSV")
    common.add_argument("--oracle", action="store_true",
                        help="use the Jacobi solver instead of the closed-form eigensystem")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="spintrio", description="Three-qubit A-C-B Heisenberg chain toolkit.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("spectrum", parents=[common], help="eight levels at (x, y)")
    sub.add_parser("ground", parents=[common], help="ground-state entanglement at (x, y)")
    sub.add_parser("thermal", parents=[common], help="thermal entanglement at (x, y, T)")
    sw = sub.add_parser("sweep", parents=[common], help="sweep x, y or T and emit CSV")
    sw.add_argument("--var", required=True, choices=("x", "y", "T"))
    sw.add_argument("--from", dest="start", type=float, required=True)
    sw.add_argument("--to", dest="stop", type=float, required=True)
    sw.add_argument("--steps", type=int, required=True)
    sw.add_argument("--quantities", default="energies,C_AC,C_BC,C_AB,tau1,residual,U",
                    help=f"comma-separated subset of {','.join(QUANTITIES)}")
    sw.add_argument("--check", action="store_true",
                    help="compare every row with the closed forms and the other backend")
    sub.add_parser("critical", parents=[common], help="critical points and temperatures at (x, y)")
    fg = sub.add_parser("figures", parents=[common], help="write figNN.csv and figNN.gp files")
    fg.add_argument("--only", help="comma-separated figure names, e.g. fig03,fig07")
    va = sub.add_parser("validate", parents=[common], help="run the invariant suite")
    va.add_argument("--grid", choices=tuple(GRIDS), default="default")
    va.add_argument("--fault", action="append", default=[], choices=FAULTS, help=argparse.SUPPRESS)
    return parser


def _backend(args) -> str:
    return "numeric" if args.oracle else "analytic"


def _params(args) -> ModelParams:
    try:
        return ModelParams(args.x, args.y)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _jsonable(v):
    """Plain JSON values; non-finite floats become null."""
    if isinstance(v, dict):
        return {str(k): _jsonable(val) for k, val in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(val) for val in v]
    if isinstance(v, np.generic):
        v = v.item()
    if isinstance(v, float) and not math.isfinite(v):
        return None
    return v


def _dumps(payload) -> str:
    return json.dumps(_jsonable(payload), indent=1, allow_nan=False) + "\n"


def _emit(args, text: str, payload) -> None:
    out = _dumps(payload) if args.json else text
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def _cmd_spectrum(args) -> int:
    levels = levels_for(_params(args), _backend(args))
    rows = [{"label": lv.label, "energy": lv.energy, "sz": lv.sz_total} for lv in levels]
    text = "".join(f"{r['label']:<6} {r['energy']: .15f}  Sz={r['sz']:+.1f}\n" for r in rows)
    _emit(args, text, {"x": args.x, "y": args.y, "backend": _backend(args), "levels": rows})
    return EXIT_OK


def _report_payload(rep) -> dict:
    return {"C_AC": rep.c_ac, "C_BC": rep.c_bc, "C_AB": rep.c_ab,
            "tau1": rep.tau1, "tau2": rep.tau2, "residual": rep.residual, "purity": rep.purity}


def _report_text(payload: dict) -> str:
    lines = [f"{k:<10} {payload[k]!r}" for k in payload if not isinstance(payload[k], dict)]
    for key in ("tau1", "tau2", "residual"):
        lines.append(f"{key:<10} " + "  ".join(f"{s}={v:.15g}" for s, v in payload[key].items()))
    return "\n".join(lines) + "\n"


def _cmd_ground(args) -> int:
    gs = ground_state(levels_for(_params(args), _backend(args)))
    payload = {"x": args.x, "y": args.y, "E0": gs.energy, "degeneracy": gs.degeneracy,
               "members": " ".join(gs.member_labels)}
    payload.update(_report_payload(report(gs.rho)))
    _emit(args, _report_text(payload), payload)
    return EXIT_OK


def _cmd_thermal(args) -> int:
    if not args.T > 0:
        raise UsageError("thermal needs --T > 0 (use 'ground' for T = 0)")
    th = thermal_state(levels_for(_params(args), _backend(args)), args.T)
    payload = {"x": args.x, "y": args.y, "T": args.T, "logZ": th.log_partition, "U": th.internal_energy}
    payload.update(_report_payload(report(th.rho)))
    _emit(args, _report_text(payload), payload)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    quantities = tuple(q.strip() for q in args.quantities.split(",") if q.strip())
    try:
        spec = SweepSpec(args.var, args.start, args.stop, args.steps, x=args.x, y=args.y, T=args.T,
                         quantities=quantities, backend=_backend(args), check=args.check)
    except SweepError as exc:
        raise UsageError(str(exc)) from None
    rows = run_sweep(spec)
    cols = spec.columns()
    text = to_json(rows, cols) + "\n" if args.json else write_csv(rows, cols)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _point(cp) -> dict:
    return {"value": cp.value, "bracket": list(cp.bracket) if cp.found else None,
            "residual": cp.residual if cp.found else None, "detail": cp.detail}


def _cmd_critical(args) -> int:
    p = _params(args)
    if p.y < 0:
        raise UsageError("critical expects y >= 0")
    sep = separable_energy(p)
    payload = {
        "x": p.x, "y": p.y,
        "qpt_x": _point(locate_qpt_x(p.y)),
        "qpt_y": _point(locate_qpt_y(p.x)),
        "critical_field": critical_field(p.x),
        "E_sep": sep.value,
        "T_E": _point(gap_temperature(p)),
        "T_C1": _point(threshold_temperature(p, "AC")),
        "T_C2": _point(threshold_temperature(p, "AB")),
    }
    lines = []
    for key, val in payload.items():
        if isinstance(val, dict):
            shown = "none" if val["value"] is None else repr(val["value"])
            extra = f"  ({val['detail']})" if val["detail"] else ""
            lines.append(f"{key:<15} {shown}{extra}")
        else:
            lines.append(f"{key:<15} {val!r}")
    _emit(args, "\n".join(lines) + "\n", payload)
    return EXIT_OK


def _cmd_figures(args) -> int:
    names = None
    if args.only:
        names = [n.strip() for n in args.only.split(",") if n.strip()]
        bad = [n for n in names if n not in FIGURES]
        if bad:
            raise UsageError(f"unknown figures {bad}; choose from {', '.join(FIGURES)}")
    written = figures(args.out or "figures", names)
    if args.json:
        sys.stdout.write(_dumps({"written": written}))
    else:
        sys.stdout.write("".join(path + "\n" for path in written))
    return EXIT_OK


def _cmd_validate(args) -> int:
    result = validate(args.grid, args.fault)
    text = _dumps(result.as_dict()) if args.json else result.summary() + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.passed else EXIT_VALIDATION


COMMANDS = {
    "spectrum": _cmd_spectrum, "ground": _cmd_ground, "thermal": _cmd_thermal, "sweep": _cmd_sweep,
    "critical": _cmd_critical, "figures": _cmd_figures, "validate": _cmd_validate,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"spintrio {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PathConsistencyError as exc:
        print(f"spintrio {args.command}: check failed: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        where = exc.filename or args.out
        print(f"spintrio {args.command}: cannot write {where}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
