"""Data for each standard plot as a CSV file plus a gnuplot script.

The scripts only read the CSV files; nothing is computed inside them.
"""
from __future__ import annotations

import os
from typing import Callable

import numpy as np

from .critical import gap_temperature, threshold_temperature
from .model import ModelParams
from .spectrum import analytic_energies
from .sweep import SweepSpec, run_sweep, write_csv

X_RANGE = (-3.0, 3.0, 601)
CRIT_X = np.linspace(-3.0, 3.0, 121)
T_RANGE = (0.005, 2.0, 400)


def _linspace(start, stop, steps):
    return SweepSpec("x", start, stop, steps).abscissae()


def _energy_rows(var: str, values, fixed: float, labels: tuple[int, ...]) -> list[dict]:
    rows = []
    for v in values:
        x, y = (v, fixed) if var == "x" else (fixed, v)
        e = analytic_energies(x, y)
        row = {"x": x, "y": y}
        row.update({f"E{k}": float(e[k - 1]) for k in labels})
        rows.append(row)
    return rows


def _pair_sweep(var: str, rng, **fixed) -> list[dict]:
    spec = SweepSpec(var, *rng, quantities=("energies", "C_AC", "C_BC", "C_AB"), **fixed)
    return run_sweep(spec)


def _multi(var: str, rng, fixed_name: str, values, **fixed) -> list[dict]:
    rows = []
    for val in values:
        rows.extend(_pair_sweep(var, rng, **{fixed_name: val}, **fixed))
    return rows


def fig02():
    return _energy_rows("x", _linspace(*X_RANGE), 0.0, (1, 8, 3, 5))


def fig03():
    return _pair_sweep("x", X_RANGE, y=0.0, T=0.0)


def fig04():
    return _energy_rows("x", _linspace(*X_RANGE), 0.5, (8, 5))


def fig05():
    return _energy_rows("y", _linspace(0.0, 3.0, 601), 0.5, (8, 5, 3, 1))


def fig06():
    return _pair_sweep("x", X_RANGE, y=0.5, T=0.0)


def fig07():
    return _pair_sweep("y", (0.005, 3.0, 600), x=0.5, T=0.0)


def fig08():
    # C_AC is plotted for T = 0, 0.5, 1.5 and C_AB for T = 0, 0.1, 0.3
    return _multi("x", X_RANGE, "T", (0.0, 0.1, 0.3, 0.5, 1.5), y=0.0)


def fig09():
    return _multi("T", T_RANGE, "x", (-1.5, -1.0, -0.55), y=0.0)


def fig10():
    rows = []
    for y in (0.1, 0.5, 1.0):
        for x in CRIT_X:
            p = ModelParams(float(x), y)
            rows.append({"x": float(x), "y": y,
                         "T_C1": threshold_temperature(p, "AC").value_or_zero(),
                         "T_C2": threshold_temperature(p, "AB").value_or_zero()})
    return rows


def fig11():
    # C_AC is plotted for T = 0, 0.5, 2 and C_AB for T = 0, 0.5
    return _multi("x", X_RANGE, "T", (0.0, 0.5, 2.0), y=0.5)


def fig12():
    return _multi("T", T_RANGE, "x", (-1.5, -1.0, -0.5), y=0.5)


def fig13():
    rows = []
    # y = 0.1 is kept next to 0, 0.5 and 1: T_E is not monotone in y there
    for y in (0.0, 0.1, 0.5, 1.0):
        for x in CRIT_X:
            rows.append({"x": float(x), "y": y,
                         "T_E": gap_temperature(ModelParams(float(x), y)).value_or_zero()})
    return rows


def _col(columns, name) -> int:
    return columns.index(name) + 1


def _select(columns, key, value, ycol) -> str:
    return "($%d==%s ? $%d : 1/0)" % (_col(columns, key), repr(value), _col(columns, ycol))


def _gp_header(name: str, title: str, xlabel: str, ylabel: str) -> list[str]:
    return [
        "set datafile separator ','",
        "set terminal pngcairo size 800,600",
        f"set output '{name}.png'",
        f"set title '{title}'",
        f"set xlabel '{xlabel}'",
        f"set ylabel '{ylabel}'",
        "set key outside",
    ]


def _script_lines(name: str, columns: list[str], curves: list[tuple[str, str]], title: str,
                  xlabel: str, ylabel: str) -> str:
    lines = _gp_header(name, title, xlabel, ylabel)
    parts = [f"'{name}.csv' every ::1 using {using} with lines title '{label}'" for using, label in curves]
    lines.append("plot " + ", \\\n     ".join(parts))
    return "\n".join(lines) + "\n"


def _plain(columns, xcol, ycols):
    return [(f"{_col(columns, xcol)}:{_col(columns, c)}", c) for c in ycols]


def _filtered(columns, xcol, key, values, ycol):
    return [(f"{_col(columns, xcol)}:{_select(columns, key, v, ycol)}", f"{ycol}, {key}={v}")
            for v in values]


FIGURES: dict[str, tuple[Callable[[], list[dict]], Callable[[list[str]], list], str, str, str]] = {
    "fig02": (fig02, lambda c: _plain(c, "x", ["E1", "E8", "E3", "E5"]),
              "Two lowest levels, y = 0", "x", "E"),
    "fig03": (fig03, lambda c: _plain(c, "x", ["C_AC", "C_AB"]), "Ground concurrences, y = 0", "x", "C"),
    "fig04": (fig04, lambda c: _plain(c, "x", ["E8", "E5"]), "Lowest levels, y = 0.5", "x", "E"),
    "fig05": (fig05, lambda c: _plain(c, "y", ["E8", "E5", "E3", "E1"]), "Lowest levels, x = 0.5", "y", "E"),
    "fig06": (fig06, lambda c: _plain(c, "x", ["C_AC", "C_AB"]), "Ground concurrences, y = 0.5", "x", "C"),
    "fig07": (fig07, lambda c: _plain(c, "y", ["C_AC", "C_AB"]), "Ground concurrences, x = 0.5", "y", "C"),
    "fig08": (fig08, lambda c: _filtered(c, "x", "T", (0.0, 0.5, 1.5), "C_AC")
              + _filtered(c, "x", "T", (0.0, 0.1, 0.3), "C_AB"),
              "Thermal concurrences, y = 0", "x", "C"),
    "fig09": (fig09, lambda c: _filtered(c, "T", "x", (-1.5, -1.0, -0.55), "C_AC")
              + _filtered(c, "T", "x", (-1.5, -1.0, -0.55), "C_AB"),
              "Thermal concurrences, y = 0", "T", "C"),
    "fig10": (fig10, lambda c: _filtered(c, "x", "y", (0.1, 0.5, 1.0), "T_C1")
              + _filtered(c, "x", "y", (0.1, 0.5, 1.0), "T_C2"),
              "Threshold temperatures", "x", "T_C"),
    "fig11": (fig11, lambda c: _filtered(c, "x", "T", (0.0, 0.5, 2.0), "C_AC")
              + _filtered(c, "x", "T", (0.0, 0.5), "C_AB"),
              "Thermal concurrences, y = 0.5", "x", "C"),
    "fig12": (fig12, lambda c: _filtered(c, "T", "x", (-1.5, -1.0, -0.5), "C_AC")
              + _filtered(c, "T", "x", (-1.5, -1.0, -0.5), "C_AB"),
              "Thermal concurrences, y = 0.5", "T", "C"),
    "fig13": (fig13, lambda c: _filtered(c, "x", "y", (0.0, 0.1, 0.5, 1.0), "T_E"),
              "Entanglement gap temperature", "x", "T_E"),
}


def figure_rows(name: str) -> list[dict]:
    return FIGURES[name][0]()


def figures(outdir: str, names=None) -> list[str]:
    """Write ``figNN.csv`` and ``figNN.gp`` for each figure; returns written paths."""
    os.makedirs(outdir, exist_ok=True)
    written = []
    for name in names or FIGURES:
        build, curves, title, xlabel, ylabel = FIGURES[name]
        rows = build()
        columns = list(rows[0].keys())
        csv_path = os.path.join(outdir, f"{name}.csv")
        write_csv(rows, columns, csv_path)
        gp_path = os.path.join(outdir, f"{name}.gp")
        with open(gp_path, "w") as fh:
            fh.write(_script_lines(name, columns, curves(columns), title, xlabel, ylabel))
        written += [csv_path, gp_path]
    return written
