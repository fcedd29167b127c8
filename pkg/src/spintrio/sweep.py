"""Parameter sweeps over x, y or T and their CSV/JSON serialization."""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .entanglement import OutOfRegimeError, closed_form_ground, report, thermal_concurrence
from .model import ModelParams
from .states import ground_state, levels_for, thermal_state

VARIABLES = ("x", "y", "T")
QUANTITIES = ("energies", "C_AC", "C_BC", "C_AB", "tau1", "residual", "U", "Z")
QUANTITY_COLUMNS = {
    "energies": ("E0", "degeneracy"),
    "C_AC": ("C_AC",),
    "C_BC": ("C_BC",),
    "C_AB": ("C_AB",),
    "tau1": ("tau1_A", "tau1_C"),
    "residual": ("residual",),
    "U": ("U",),
    "Z": ("logZ",),
}
ALL_COLUMNS = ("x", "y", "T", "E0", "degeneracy", "C_AC", "C_BC", "C_AB",
               "tau1_A", "tau1_C", "residual", "U", "logZ")
INT_COLUMNS = {"degeneracy"}
CHECK_TOL = 1e-9


class SweepError(ValueError):
    """Invalid sweep request."""


class PathConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int
    x: float = 0.0
    y: float = 0.0
    T: float = 0.0
    quantities: tuple[str, ...] = ("energies", "C_AC", "C_BC", "C_AB", "tau1", "residual", "U")
    backend: str = "analytic"
    check: bool = False

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise SweepError(f"variable must be one of {VARIABLES}, got {self.variable!r}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise SweepError(f"steps must be an integer >= 2, got {self.steps!r}")
        if not self.start < self.stop:
            raise SweepError(f"need from < to, got {self.start} .. {self.stop}")
        bad = [q for q in self.quantities if q not in QUANTITIES]
        if bad:
            raise SweepError(f"unknown quantities {bad}; choose from {QUANTITIES}")
        if self.variable == "T" and self.start <= 0:
            raise SweepError("a temperature sweep must start above 0")
        if self.variable != "T" and self.T < 0:
            raise SweepError("fixed temperature must be >= 0 (0 selects the ground state)")
        if self.backend not in ("analytic", "numeric"):
            raise SweepError(f"backend must be 'analytic' or 'numeric', got {self.backend!r}")

    def abscissae(self) -> list[float]:
        step = (self.stop - self.start) / (self.steps - 1)
        values = [self.start + i * step for i in range(self.steps)]
        values[-1] = self.stop
        return values

    def columns(self) -> list[str]:
        wanted = {"x", "y", "T"}
        for q in self.quantities:
            wanted.update(QUANTITY_COLUMNS[q])
        return [c for c in ALL_COLUMNS if c in wanted]

    def points(self) -> list[tuple[float, float, float]]:
        out = []
        for v in self.abscissae():
            fixed = {"x": self.x, "y": self.y, "T": self.T}
            fixed[self.variable] = v
            out.append((fixed["x"], fixed["y"], fixed["T"]))
        return out


def state_row(x: float, y: float, T: float, backend: str = "analytic") -> dict:
    """All sweep columns at one parameter point. ``T == 0`` selects the ground state."""
    p = ModelParams(x, y)
    levels = levels_for(p, backend)
    gs = ground_state(levels)
    if T == 0:
        rho, u_val, log_z = gs.rho, gs.energy, math.nan
    else:
        th = thermal_state(levels, T)
        rho, u_val, log_z = th.rho, th.internal_energy, th.log_partition
    rep = report(rho)
    return {
        "x": x, "y": y, "T": T,
        "E0": gs.energy, "degeneracy": gs.degeneracy,
        "C_AC": rep.c_ac, "C_BC": rep.c_bc, "C_AB": rep.c_ab,
        "tau1_A": rep.tau1["A"], "tau1_C": rep.tau1["C"],
        "residual": rep.residual["A"],
        "U": u_val, "logZ": log_z,
    }


def check_row(row: dict, backend: str) -> None:
    """Compare a row with the closed forms and with the other eigen-backend."""
    x, y, T = row["x"], row["y"], row["T"]
    p = ModelParams(x, y)
    refs = []
    if T == 0:
        try:
            c_ac, c_ab = closed_form_ground(p)
            refs.append(("closed form", {"C_AC": c_ac, "C_BC": c_ac, "C_AB": c_ab}))
        except OutOfRegimeError:
            pass
    else:
        refs.append(("closed form", {
            "C_AC": float(thermal_concurrence(p, [T], "AC")[0]),
            "C_BC": float(thermal_concurrence(p, [T], "BC")[0]),
            "C_AB": float(thermal_concurrence(p, [T], "AB")[0]),
        }))
    other = "numeric" if backend == "analytic" else "analytic"
    refs.append((other, state_row(x, y, T, other)))
    for name, ref in refs:
        for col, val in ref.items():
            if col not in ("C_AC", "C_BC", "C_AB", "E0", "U", "tau1_A", "tau1_C"):
                continue
            if abs(row[col] - val) > CHECK_TOL:
                raise PathConsistencyError(
                    f"{col} at (x={x}, y={y}, T={T}): {row[col]!r} vs {name} {val!r}")


def thread_count() -> int:
    raw = os.environ.get("SPINTRIO_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        raise SweepError(f"SPINTRIO_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise SweepError("SPINTRIO_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def _compute_rows(points: Sequence[tuple[float, float, float]], backend: str, check: bool,
                  columns: Sequence[str]) -> list[dict]:
    def one(pt):
        row = state_row(*pt, backend=backend)
        if check:
            check_row(row, backend)
        return {c: row[c] for c in columns}

    workers = min(thread_count(), len(points))
    if workers <= 1:
        return [one(pt) for pt in points]
    # map() yields in submission order, so rows keep the abscissa order
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, points))


def run_sweep(spec: SweepSpec) -> list[dict]:
    return _compute_rows(spec.points(), spec.backend, spec.check, spec.columns())


def sweep_points(points: Iterable[tuple[float, float, float]], columns: Sequence[str] = ALL_COLUMNS,
                 backend: str = "analytic", check: bool = False) -> list[dict]:
    """Rows for an arbitrary list of ``(x, y, T)`` points."""
    return _compute_rows(list(points), backend, check, columns)


def format_value(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def write_csv(rows: Sequence[dict], columns: Sequence[str] | None = None, target=None) -> str:
    """Write rows as CSV (header, 17 significant digits). Returns the text."""
    columns = list(columns or (rows[0].keys() if rows else []))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    text = buf.getvalue()
    if target is not None:
        if hasattr(target, "write"):
            target.write(text)
        else:
            with open(target, "w", newline="") as fh:
                fh.write(text)
    return text


def _parse(col: str, text: str):
    if col in INT_COLUMNS:
        return int(text)
    return float(text)


def read_csv(source) -> list[dict]:
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and "\n" in source:
        text = source
    else:
        with open(source, newline="") as fh:
            text = fh.read()
    reader = csv.reader(io.StringIO(text))
    header = next(reader)
    return [{c: _parse(c, v) for c, v in zip(header, rec)} for rec in reader if rec]


def to_json(rows: Sequence[dict], columns: Sequence[str] | None = None) -> str:
    columns = list(columns or (rows[0].keys() if rows else []))

    def clean(v):
        # JSON has no NaN; the ground-state logZ is reported as null
        return None if isinstance(v, float) and math.isnan(v) else v

    data = {"columns": columns, "rows": [[clean(row[c]) for c in columns] for row in rows]}
    return json.dumps(data, indent=1)
