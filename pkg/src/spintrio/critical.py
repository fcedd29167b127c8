"""Level-crossing locators, separable energy and characteristic temperatures.

Every root finder here is plain bisection: the quantities involved are
piecewise (ground-level identity) or only known to change sign once.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .entanglement import thermal_log_margin, thermal_margin
from .model import ModelParams
from .spectrum import LABELS, analytic_energies, u_pm
from .states import internal_energy_from_energies

QPT_X_RANGE = (-6.0, 6.0)
QPT_Y_MAX = 20.0
SCAN_STEP = 1e-3
T_MAX = 50.0
T_MIN_SCAN = 1e-4
T_SCAN_POINTS = 2000
SEP_GRID = 72


@dataclass(frozen=True)
class CriticalPoint:
    kind: str
    value: float | None
    bracket: tuple[float, float] = (math.nan, math.nan)
    residual: float = math.nan
    detail: str = ""

    @property
    def found(self) -> bool:
        return self.value is not None

    def value_or_zero(self) -> float:
        return 0.0 if self.value is None else self.value


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float = 1e-13,
           max_iter: int = 200) -> tuple[float, float, float]:
    """Root of ``f`` in ``[lo, hi]`` (sign change required).

    Returns ``(root, lo, hi)`` where the final bracket still straddles the root.
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return lo, lo, lo
    if fhi == 0:
        return hi, hi, hi
    if np.sign(flo) == np.sign(fhi):
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol * max(1.0, abs(mid)) or mid in (lo, hi):
            break
        fmid = f(mid)
        if fmid == 0:
            return mid, mid, mid
        if np.sign(fmid) == np.sign(flo):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi), lo, hi


def _ground_sets(energies: np.ndarray) -> list[frozenset]:
    e_min = energies.min(axis=1, keepdims=True)
    tol = 1e-9 * np.maximum(1.0, np.abs(e_min))
    mask = energies - e_min <= tol
    return [frozenset(np.flatnonzero(row)) for row in mask]


def _first_change(grid: np.ndarray, energies_at: Callable[[np.ndarray], np.ndarray]):
    sets = _ground_sets(energies_at(grid))
    for i in range(1, len(sets)):
        if sets[i] != sets[i - 1]:
            old, new = sets[i - 1], sets[i]
            entering = sorted(new - old) or sorted(new)
            leaving = sorted(old - new) or sorted(old)
            return i, leaving[0], entering[0]
    return None


def _locate(kind: str, grid: np.ndarray, level_energy: Callable[[float, int], float],
            energies_at: Callable[[np.ndarray], np.ndarray]) -> CriticalPoint:
    change = _first_change(grid, energies_at)
    if change is None:
        return CriticalPoint(kind, None, detail="no ground-level change in scan range")
    i, a, b = change

    def f(t):
        return level_energy(t, a) - level_energy(t, b)

    root, lo, hi = bisect(f, grid[i - 1], grid[i])
    detail = f"{LABELS[a]} -> {LABELS[b]}"
    return CriticalPoint(kind, float(root), (float(lo), float(hi)), float(abs(f(root))), detail)


def locate_qpt_x(y: float) -> CriticalPoint:
    """Smallest x in [-6, 6] where the ground level changes at field ``y``."""
    if y < 0:
        raise ValueError("locate_qpt_x expects y >= 0")
    lo, hi = QPT_X_RANGE
    n = int(round((hi - lo) / SCAN_STEP))
    grid = lo + SCAN_STEP * np.arange(n + 1)
    return _locate("qpt_x", grid,
                   lambda x, k: float(analytic_energies(x, y)[k]),
                   lambda xs: analytic_energies(xs, y))


def locate_qpt_y(x: float) -> CriticalPoint:
    """Smallest y > 0 where the ground level changes at anisotropy ``x``."""
    n = int(round(QPT_Y_MAX / SCAN_STEP))
    grid = SCAN_STEP * np.arange(1, n + 1)
    return _locate("qpt_y", grid,
                   lambda y, k: float(analytic_energies(x, y)[k]),
                   lambda ys: analytic_energies(x, ys))


def critical_field(x: float) -> float:
    """Field where psi5 and the polarized psi8 cross: ``(2(1+2x) + U+)/4``."""
    up, _ = u_pm(x)
    return (2 * (1 + 2 * x) + up) / 4


@dataclass(frozen=True)
class SeparableEnergy:
    value: float
    angles: tuple[float, float, float]  # polar angles of A, C, B in the xz-plane


def product_energy(p: ModelParams, theta_a, theta_c, theta_b):
    """<H> for a product of spin-1/2 coherent states in the xz-plane."""
    ca, cc, cb = np.cos(theta_a), np.cos(theta_c), np.cos(theta_b)
    sa, sc, sb = np.sin(theta_a), np.sin(theta_c), np.sin(theta_b)
    zz = (1 + 2 * p.x) / 4 * (ca * cc + cb * cc)
    xx = (1 - p.x) / 4 * (sa * sc + sb * sc)
    return zz + xx + p.y / 2 * (ca + cb + cc)


def product_energy_3d(p: ModelParams, directions: np.ndarray) -> np.ndarray:
    """<H> for product states given unit Bloch vectors, shape (..., 3 sites, 3)."""
    a, c, b = directions[..., 0, :] / 2, directions[..., 1, :] / 2, directions[..., 2, :] / 2
    zz = (1 + 2 * p.x) * (a[..., 2] * c[..., 2] + b[..., 2] * c[..., 2])
    xy = (1 - p.x) * (a[..., 0] * c[..., 0] + a[..., 1] * c[..., 1]
                      + b[..., 0] * c[..., 0] + b[..., 1] * c[..., 1])
    return zz + xy + p.y * (a[..., 2] + b[..., 2] + c[..., 2])


def _best_angle(cos_coef: float, sin_coef: float) -> float:
    # minimizer of cos_coef*cos(t) + sin_coef*sin(t)
    return math.atan2(-sin_coef, -cos_coef)


def _derivatives(p: ModelParams, t) -> tuple[np.ndarray, np.ndarray]:
    """Gradient and Hessian of the coplanar product energy in (theta_A, theta_C, theta_B)."""
    zz, xx, h = (1 + 2 * p.x) / 4, (1 - p.x) / 4, p.y / 2
    ca, cc, cb = (math.cos(v) for v in t)
    sa, sc, sb = (math.sin(v) for v in t)
    grad = np.array([
        -zz * sa * cc + xx * ca * sc - h * sa,
        -zz * (ca + cb) * sc + xx * (sa + sb) * cc - h * sc,
        -zz * sb * cc + xx * cb * sc - h * sb,
    ])
    h_aa = -zz * ca * cc - xx * sa * sc - h * ca
    h_bb = -zz * cb * cc - xx * sb * sc - h * cb
    h_cc = -zz * (ca + cb) * cc - xx * (sa + sb) * sc - h * cc
    h_ac = zz * sa * sc + xx * ca * cc
    h_bc = zz * sb * sc + xx * cb * cc
    hess = np.array([[h_aa, h_ac, 0.0], [h_ac, h_cc, h_bc], [0.0, h_bc, h_bb]])
    return grad, hess


def _coordinate_descent(p: ModelParams, t: list[float]) -> float:
    zz, xx = (1 + 2 * p.x) / 4, (1 - p.x) / 4
    e_prev = float(product_energy(p, *t))
    for _ in range(10000):
        ca, sa = math.cos(t[0]), math.sin(t[0])
        cb, sb = math.cos(t[2]), math.sin(t[2])
        t[1] = _best_angle(zz * (ca + cb) + p.y / 2, xx * (sa + sb))
        cc, sc = math.cos(t[1]), math.sin(t[1])
        t[0] = _best_angle(zz * cc + p.y / 2, xx * sc)
        t[2] = _best_angle(zz * cc + p.y / 2, xx * sc)
        e = float(product_energy(p, *t))
        if e_prev - e < 1e-15:
            return min(e, e_prev)
        e_prev = e
    return e_prev


def _escape_saddle(p: ModelParams, t: list[float]) -> bool:
    """Step along a negative-curvature direction if there is one; True if moved."""
    _, hess = _derivatives(p, t)
    evals, evecs = np.linalg.eigh(hess)
    if evals[0] >= -1e-12:
        return False
    direction = evecs[:, 0]
    e0 = float(product_energy(p, *t))
    steps = np.concatenate([-np.geomspace(1e-4, math.pi, 60), np.geomspace(1e-4, math.pi, 60)])
    trial = np.array(t)[None, :] + steps[:, None] * direction[None, :]
    energies = product_energy(p, trial[:, 0], trial[:, 1], trial[:, 2])
    k = int(np.argmin(energies))
    if energies[k] >= e0:
        return False
    t[:] = list(trial[k])
    return True


def _newton_polish(p: ModelParams, t: list[float]) -> None:
    for _ in range(50):
        grad, hess = _derivatives(p, t)
        if np.linalg.eigvalsh(hess)[0] <= 0 or np.abs(grad).max() < 1e-15:
            return
        step = np.linalg.solve(hess, grad)
        trial = [a - b for a, b in zip(t, step)]
        if product_energy(p, *trial) > product_energy(p, *t) + 1e-15:
            return
        t[:] = trial
        if np.abs(step).max() < 1e-14:
            return


def separable_energy(p: ModelParams) -> SeparableEnergy:
    """Minimum of <H> over product states.

    The flip-flop term only involves the relative azimuth of neighbouring spins,
    so the minimum is attained with all spins in the xz-plane. A 5-degree grid
    over the three polar angles seeds an exact coordinate descent (each angle
    enters as ``a cos t + b sin t``). Descent can stall on a saddle such as a
    collinear configuration just past its stability limit, so the Hessian is
    checked and negative-curvature directions are followed before a final
    Newton polish.
    """
    grid = np.arange(SEP_GRID) * (2 * math.pi / SEP_GRID)
    ta, tc, tb = np.meshgrid(grid, grid, grid, indexing="ij", sparse=True)
    energies = product_energy(p, ta, tc, tb)
    ia, ic, ib = np.unravel_index(np.argmin(energies), energies.shape)
    t = [grid[ia], grid[ic], grid[ib]]
    _coordinate_descent(p, t)
    for _ in range(20):
        if not _escape_saddle(p, t):
            break
        _coordinate_descent(p, t)
    _newton_polish(p, t)
    return SeparableEnergy(float(product_energy(p, *t)), (t[0], t[1], t[2]))


def separable_energy_closed_form(p: ModelParams) -> float:
    """``(-1 - 2x - y)/2``: centre spin up, edge spins down.

    This is the product-state minimum only for ``x >= 0`` and
    ``0 <= y <= collinear_field_limit(x)``; at larger fields the spins cant and
    :func:`separable_energy` drops below it.
    """
    return 0.5 * (-1 - 2 * p.x - p.y)


def collinear_field_limit(x: float) -> float:
    """Largest field at which the up-down-up product state is locally stable.

    Root of ``(1+2x+2y)(1+2x-y) = (1-x)^2``, the Hessian determinant of the
    product energy around that configuration.
    """
    a, b = 1 + 2 * x, 1 - x
    return (a + math.sqrt(9 * a * a - 8 * b * b)) / 4


def gap_temperature(p: ModelParams) -> CriticalPoint:
    """Temperature where the thermal energy reaches the separable energy."""
    energies = analytic_energies(p.x, p.y)
    e0 = float(energies.min())
    e_sep = separable_energy(p).value
    if e0 >= e_sep - 1e-9 * max(1.0, abs(e_sep)):
        return CriticalPoint("gap_temp", None, detail=f"ground energy {e0!r} is not below E_sep {e_sep!r}")

    def f(temp):
        return float(internal_energy_from_energies(energies, temp)) - e_sep

    lo, hi = 1e-6, 1.0
    while f(hi) < 0:
        lo, hi = hi, 2 * hi
        if hi > 1e8:
            return CriticalPoint("gap_temp", None, detail="thermal energy never reaches E_sep")
    if f(lo) >= 0:
        return CriticalPoint("gap_temp", None, detail="E_sep reached below T=1e-6")
    root, blo, bhi = bisect(f, lo, hi)
    return CriticalPoint("gap_temp", float(root), (float(blo), float(bhi)), abs(f(root)))


def threshold_temperature(p: ModelParams, pair: str) -> CriticalPoint:
    """Largest T in (0, 50] at which the pair's thermal concurrence is positive."""
    kind = "threshold_nnn" if pair.upper() in ("AB", "BA") else "threshold_nn"
    temps = np.geomspace(T_MIN_SCAN, T_MAX, T_SCAN_POINTS)
    # the sign test runs in log space so that underflowing populations at low
    # T cannot fake a positive margin
    sign = thermal_log_margin(p, temps, pair)
    positive = np.flatnonzero(sign > 0)
    if positive.size == 0:
        return CriticalPoint(kind, None, detail="concurrence vanishes on the whole scan")
    last = positive[-1]
    if last == len(temps) - 1:
        return CriticalPoint(kind, T_MAX, (T_MAX, T_MAX), float(thermal_margin(p, [T_MAX], pair)[0]),
                             detail="still entangled at T_max")

    def f(temp):
        return float(thermal_log_margin(p, [temp], pair)[0])

    root, lo, hi = bisect(f, float(temps[last]), float(temps[last + 1]))
    residual = abs(float(thermal_margin(p, [root], pair)[0]))
    return CriticalPoint(kind, float(root), (float(lo), float(hi)), residual)
