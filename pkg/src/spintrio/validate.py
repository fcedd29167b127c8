"""Invariant suite run by ``spintrio validate``.

Each check scans a fixed (x, y, T) grid plus a seeded random sample and
records its worst deviation. ``faults`` deliberately corrupts one ingredient
so the harness can confirm that the suite notices.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .entanglement import (PAIRS, OutOfRegimeError, closed_form_ground, concurrence_wootters,
                           concurrence_xstate, partial_trace, report, thermal_xstate_arrays,
                           xstate_elements)
from .model import ModelParams, build_hamiltonian, diagonalize_many, sz_operator
from .spectrum import SZ_OF_LABEL, analytic_energies, analytic_levels, compare_levels
from .states import ground_state

GRIDS = {
    # name: (x points, y points, temperatures)
    "default": (np.linspace(-3, 3, 25), np.linspace(0, 2, 9), np.geomspace(0.05, 5, 6)),
    "dense": (np.linspace(-3, 3, 61), np.linspace(0, 2, 21), np.geomspace(0.01, 10, 16)),
}
SPECTRUM_GRID = (np.linspace(-3, 3, 61), np.linspace(0, 2, 21))
RANDOM_SEED = 20240611
RANDOM_POINTS = 200
FAULTS = ("offdiag_sign",)

TOL = {
    "spectrum": 1e-10,
    "traceless": 1e-12,
    "commutation": 1e-10,
    "wootters_xstate": 1e-10,
    "thermal_elements": 1e-10,
    "ground_closed_form": 1e-10,
    "ckw_pure": 1e-9,
    "mirror": 1e-12,
    "spin_flip": 1e-12,
    "separable_x1": 0.0,
}


@dataclass
class CheckResult:
    name: str
    tol: float
    max_error: float = 0.0
    points: int = 0
    worst_at: tuple = ()

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tol

    def record(self, err: float, where: tuple) -> None:
        self.points += 1
        if not err <= self.max_error:  # NaN counts as a failure
            self.max_error = err if not math.isnan(err) else math.inf
            self.worst_at = where

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        where = f" worst at {self.worst_at}" if self.worst_at and self.max_error > 0 else ""
        return f"{status} {self.name:<20} max err {self.max_error:.3e} (tol {self.tol:.0e}, {self.points} pts){where}"


@dataclass
class ValidationResult:
    grid: str
    checks: list[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]

    def summary(self) -> str:
        lines = [c.line() for c in self.checks]
        verdict = "all checks passed" if self.passed else "FAILED: " + ", ".join(self.failed)
        lines.append(f"{verdict} ({len(self.checks)} checks, grid={self.grid}, {self.elapsed:.2f} s)")
        return "\n".join(lines)

    def as_dict(self) -> dict:
        return {
            "grid": self.grid, "passed": self.passed, "elapsed": self.elapsed,
            "checks": [{"name": c.name, "passed": c.passed, "max_error": c.max_error,
                        "tol": c.tol, "points": c.points, "worst_at": list(c.worst_at)}
                       for c in self.checks],
        }


def _points(grid: str) -> tuple[list[tuple[float, float]], np.ndarray, list[tuple[float, float, float]]]:
    xs, ys, temps = GRIDS[grid]
    xy = [(float(x), float(y)) for x in xs for y in ys]
    rng = np.random.default_rng(RANDOM_SEED)
    draws = [(float(rng.uniform(-3, 3)), float(rng.uniform(0, 2)), float(10 ** rng.uniform(-2, 1)))
             for _ in range(RANDOM_POINTS)]
    return xy, temps, draws


def _thermal_rhos(energies: np.ndarray, vectors: np.ndarray, temps: np.ndarray) -> np.ndarray:
    shifted = energies - energies.min()
    w = np.exp(-shifted[None, :] / temps[:, None])
    w /= w.sum(axis=1, keepdims=True)
    return np.einsum("ik,tk,jk->tij", vectors, w, vectors)


def _check_spectrum(res: CheckResult) -> None:
    xs, ys = SPECTRUM_GRID
    params = [ModelParams(float(x), float(y)) for x in xs for y in ys]
    numeric = diagonalize_many([build_hamiltonian(p) for p in params])
    for p, num in zip(params, numeric):
        de, angle, _ = compare_levels(analytic_levels(p), num)
        res.record(max(de, angle), (p.x, p.y))


def run_checks(grid: str = "default", faults=()) -> list[CheckResult]:
    faults = set(faults)
    unknown = faults - set(FAULTS)
    if unknown:
        raise ValueError(f"unknown faults {sorted(unknown)}; known: {FAULTS}")
    if grid not in GRIDS:
        raise ValueError(f"unknown grid {grid!r}; choose from {tuple(GRIDS)}")
    checks = {name: CheckResult(name, tol) for name, tol in TOL.items()}
    _check_spectrum(checks["spectrum"])

    xy, temps, draws = _points(grid)
    sz_tot = sum(sz_operator(s) for s in "ACB")
    swap = np.zeros((8, 8))
    for i in range(8):
        a, c, b = i >> 2 & 1, i >> 1 & 1, i & 1
        swap[b << 2 | c << 1 | a, i] = 1.0
    by_xy: dict[tuple[float, float], list[float]] = {pt: list(temps) for pt in xy}
    for x, y, t in draws:
        by_xy.setdefault((x, y), []).append(t)

    keys = list(by_xy)
    hams = [build_hamiltonian(ModelParams(x, y)) for x, y in keys]
    numeric = diagonalize_many(hams)
    for (x, y), ham, num in zip(keys, hams, numeric):
        p = ModelParams(x, y)
        ts = np.array(by_xy[(x, y)])
        checks["traceless"].record(max(abs(np.trace(ham)), abs(float(analytic_energies(x, y).sum()))), (x, y))
        checks["commutation"].record(float(np.abs(ham @ sz_tot - sz_tot @ ham).max()), (x, y))

        # spectrum is mapped onto itself by y -> -y (global spin flip)
        e_plus = np.sort(analytic_energies(x, y))
        e_minus = np.sort(analytic_energies(x, -y))
        checks["spin_flip"].record(float(np.abs(e_plus - e_minus).max()), (x, y))

        # Zeeman shift of each labelled level
        zee = analytic_energies(x, y) - analytic_energies(x, 0.0)
        shift = y * np.array([SZ_OF_LABEL[f"psi{k}"] for k in range(1, 9)])
        checks["spin_flip"].record(float(np.abs(zee - shift).max()), (x, y))

        thermal = _thermal_rhos(num.energies, num.vectors, ts)
        closed = {pair: thermal_xstate_arrays(p, ts, pair) for pair in PAIRS}
        for k, t in enumerate(ts):
            rho = thermal[k]
            where = (x, y, float(t))
            checks["commutation"].record(float(np.abs(rho @ ham - ham @ rho).max()), where)
            checks["mirror"].record(float(np.abs(swap @ rho @ swap.T - rho).max()), where)
            conc = {}
            for pair in PAIRS:
                rho4 = partial_trace(rho, pair)
                el = xstate_elements(rho4)
                c_x = concurrence_xstate(el)
                conc[pair] = c_x
                checks["wootters_xstate"].record(abs(c_x - concurrence_wootters(rho4)), where + (pair,))
                ref = closed[pair]
                z = ref["scale"][k]
                off = -ref["offdiag"][k] if "offdiag_sign" in faults else ref["offdiag"][k]
                err = max(abs(el.u - ref["u"][k] / z), abs(el.v - ref["v"][k] / z),
                          abs(el.w1 - ref["w1"][k] / z), abs(el.w2 - ref["w2"][k] / z),
                          abs(el.offdiag - off / z))
                checks["thermal_elements"].record(err, where + (pair,))
            checks["mirror"].record(abs(conc["AC"] - conc["BC"]), where)

        gs = ground_state(analytic_levels(p))
        rep = report(gs.rho)
        checks["mirror"].record(abs(rep.c_ac - rep.c_bc), (x, y, 0.0))
        try:
            c_ac, c_ab = closed_form_ground(p)
            checks["ground_closed_form"].record(max(abs(rep.c_ac - c_ac), abs(rep.c_ab - c_ab)), (x, y, 0.0))
        except OutOfRegimeError:
            pass
        if y > 0 and gs.is_pure:
            checks["ckw_pure"].record(max(abs(r) for r in rep.residual.values()), (x, y, 0.0))

    for y in sorted({y for _, y in xy}):
        p = ModelParams(1.0, y)
        levels = analytic_levels(p)
        states = [ground_state(levels).rho]
        states += list(_thermal_rhos(levels.energies, levels.vectors, np.array([0.1, 1.0, 10.0])))
        for rho in states:
            rep = report(rho)
            checks["separable_x1"].record(max(rep.c_ac, rep.c_bc, rep.c_ab), (1.0, y))
    return list(checks.values())


def validate(grid: str = "default", faults=()) -> ValidationResult:
    """Run every invariant check; the result lists each check with its worst error."""
    t0 = time.perf_counter()
    checks = run_checks(grid, faults)
    return ValidationResult(grid, checks, time.perf_counter() - t0)
