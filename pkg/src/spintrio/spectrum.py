"""Closed-form eigensystem of the chain Hamiltonian.

Within the S_z = +1/2 sector the eigenvectors are
``|uud> - r |udu> + |duu>`` (and the mirrored S_z = -1/2 patterns), with
``r`` and ``s`` fixed by ``U+`` and ``U-``. At ``x = 1`` the flip-flop term
vanishes and the amplitude ratios are singular; an explicit limit branch
takes over there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import DIM, EigenSystem, Level, ModelParams, basis_index, diagonalize, build_hamiltonian

ISING_POINT_TOL = 1e-9
SQRT2 = math.sqrt(2.0)


class SpectrumMismatch(AssertionError):
    pass


@dataclass(frozen=True)
class AnalyticCoefficients:
    x: float
    u_plus: float
    u_minus: float
    r: float
    s: float
    a_norm: float
    b_norm: float

    @property
    def at_ising_point(self) -> bool:
        return math.isinf(self.r)

    # normalized amplitudes of the psi3/psi5 and psi4/psi6 patterns: the edge
    # sites carry 1/A (1/B), the flipped centre carries -r/A (-s/B)
    @property
    def edge_plus(self) -> float:
        return 0.0 if self.at_ising_point else 1.0 / self.a_norm

    @property
    def centre_plus(self) -> float:
        return 1.0 if self.at_ising_point else -self.r / self.a_norm

    @property
    def edge_minus(self) -> float:
        return 1.0 / self.b_norm

    @property
    def centre_minus(self) -> float:
        return -self.s / self.b_norm


def u_pm(x: float) -> tuple[float, float]:
    """``U+-(x) = 1 + 2x +- sqrt(3(4x^2 - 4x + 3))``.

    The smaller-magnitude root comes from ``U+ U- = -8(x-1)^2`` to avoid
    cancellation.
    """
    lead = 1.0 + 2.0 * x
    root = math.sqrt(3.0 * (4.0 * x * x - 4.0 * x + 3.0))
    product = -8.0 * (x - 1.0) ** 2
    if lead >= 0:
        up = lead + root
        um = product / up
    else:
        um = lead - root
        up = product / um
    return up, um


def coefficients(x: float) -> AnalyticCoefficients:
    up, um = u_pm(x)
    if abs(x - 1.0) < ISING_POINT_TOL:
        return AnalyticCoefficients(x, up, um, math.inf, 0.0, math.inf, SQRT2)
    r = -up / (2.0 * (x - 1.0))
    # -U-/(2(x-1)) rewritten with U+ U- = -8(x-1)^2
    s = 4.0 * (x - 1.0) / up
    return AnalyticCoefficients(x, up, um, r, s, math.sqrt(2.0 + r * r), math.sqrt(2.0 + s * s))


def analytic_energies(x, y):
    """Energies E1..E8 (label order); broadcasts over array ``x`` and ``y``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    lead = 1.0 + 2.0 * x
    root = np.sqrt(3.0 * (4.0 * x * x - 4.0 * x + 3.0))
    product = -8.0 * (x - 1.0) ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        up = np.where(lead >= 0, lead + root, product / (lead - root))
        um = np.where(lead >= 0, product / (lead + root), lead - root)
    return np.stack(np.broadcast_arrays(
        0.5 * (lead + 3 * y),
        0.5 * y,
        0.25 * (2 * y - up),
        0.25 * (2 * y - um),
        0.25 * (-2 * y - up),
        0.25 * (-2 * y - um),
        -0.5 * y,
        0.5 * (lead - 3 * y),
    ), axis=-1)


LABELS = tuple(f"psi{k}" for k in range(1, 9))
SZ_OF_LABEL = dict(zip(LABELS, (1.5, 0.5, 0.5, 0.5, -0.5, -0.5, -0.5, -1.5)))


def _ket(pattern: dict[str, float]) -> np.ndarray:
    vec = np.zeros(DIM)
    for spins, amp in pattern.items():
        vec[basis_index(spins)] = amp
    nz = np.flatnonzero(vec)
    if vec[nz[0]] < 0:
        vec = -vec
    return vec


def analytic_levels(p: ModelParams) -> EigenSystem:
    """All eight closed-form levels in label order psi1..psi8 (not sorted by energy)."""
    co = coefficients(p.x)
    energies = analytic_energies(p.x, p.y)
    h = 1.0 / SQRT2
    e3, c3 = co.edge_plus, co.centre_plus
    e4, c4 = co.edge_minus, co.centre_minus
    kets = [
        _ket({"uuu": 1.0}),
        _ket({"uud": -h, "duu": h}),
        _ket({"uud": e3, "udu": c3, "duu": e3}),
        _ket({"uud": e4, "udu": c4, "duu": e4}),
        _ket({"ddu": e3, "dud": c3, "udd": e3}),
        _ket({"ddu": e4, "dud": c4, "udd": e4}),
        _ket({"ddu": -h, "udd": h}),
        _ket({"ddd": 1.0}),
    ]
    levels = tuple(Level(float(energies[k]), kets[k], SZ_OF_LABEL[LABELS[k]], LABELS[k])
                   for k in range(8))
    return EigenSystem(levels)


def sorted_levels(es: EigenSystem) -> EigenSystem:
    order = np.argsort(es.energies, kind="stable")
    return EigenSystem(tuple(es.levels[i] for i in order), es.residual, es.sweeps)


@dataclass(frozen=True)
class VerificationReport:
    max_energy_diff: float
    max_subspace_angle: float
    passed: bool


def _clusters(energies: np.ndarray, gap: float = 1e-4) -> list[list[int]]:
    groups = [[0]]
    for i in range(1, len(energies)):
        if energies[i] - energies[i - 1] <= gap * max(1.0, abs(energies[i])):
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def compare_levels(analytic: EigenSystem, numeric: EigenSystem) -> tuple[float, float, int]:
    """Energy and subspace discrepancy between two eigensystems.

    Eigenvectors are compared through principal angles between the spans of
    (nearly) degenerate clusters. Returns ``(max_energy_diff,
    max_angle, worst_index)`` with the worst index in ascending-energy order.
    """
    a, n = sorted_levels(analytic), sorted_levels(numeric)
    diffs = np.abs(a.energies - n.energies)
    worst = int(np.argmax(diffs))
    max_angle = 0.0
    va, vn = a.vectors, n.vectors
    for group in _clusters(a.energies):
        # sine of the largest principal angle, accurate for tiny angles
        qa, qn = va[:, group], vn[:, group]
        angle = float(np.linalg.norm(qn - qa @ (qa.T @ qn), 2))
        if angle > max_angle:
            max_angle = angle
            if angle > diffs[worst]:
                worst = group[0]
    return float(diffs.max()), max_angle, worst


def verify_against_numeric(p: ModelParams, tol: float = 1e-10) -> VerificationReport:
    """Check the closed-form eigensystem against the Jacobi solver at ``p``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    analytic = analytic_levels(p)
    numeric = diagonalize(build_hamiltonian(p))
    de, angle, worst = compare_levels(analytic, numeric)
    if de > tol or angle > tol:
        lab = sorted_levels(analytic).levels[worst]
        raise SpectrumMismatch(
            f"at x={p.x}, y={p.y}: level {lab.label} (E={lab.energy:.12g}) "
            f"energy diff {de:.3e}, subspace angle {angle:.3e} exceed tol {tol:.1e}")
    return VerificationReport(de, angle, True)
