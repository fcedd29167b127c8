"""Basis, spin operators and Hamiltonian of the open A-C-B chain.

Product states are indexed by three bits ``|s_A s_C s_B>``: bit 2 is qubit A,
bit 1 the central qubit C and bit 0 qubit B, with a set bit meaning spin up.
The central qubit sits in the middle slot.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

DIM = 8
SITES = ("A", "C", "B")
# bit position of each site inside a basis index
SITE_BIT = {"A": 2, "C": 1, "B": 0}
SZ_SECTORS = (1.5, 0.5, -0.5, -1.5)

JACOBI_MAX_SWEEPS = 50
JACOBI_REL_TOL = 1e-13
SECTOR_LEAK_TOL = 1e-10


@dataclass(frozen=True)
class ModelParams:
    """Dimensionless couplings: ``x`` is the axial exchange ratio, ``y`` the field."""

    x: float
    y: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.x) and np.isfinite(self.y)):
            raise ValueError(f"model parameters must be finite, got x={self.x}, y={self.y}")


@dataclass(frozen=True)
class Level:
    """One eigenpair. ``label`` is ``psi1``..``psi8`` for analytic levels."""

    energy: float
    vector: np.ndarray
    sz_total: float
    label: str = ""


@dataclass(frozen=True)
class EigenSystem:
    levels: tuple[Level, ...]
    residual: float = 0.0
    sweeps: int = 0

    @property
    def energies(self) -> np.ndarray:
        return np.array([lv.energy for lv in self.levels])

    @property
    def vectors(self) -> np.ndarray:
        """Eigenvectors as columns."""
        return np.column_stack([lv.vector for lv in self.levels])

    def __iter__(self):
        return iter(self.levels)

    def __len__(self):
        return len(self.levels)

    def __getitem__(self, i):
        return self.levels[i]


class JacobiConvergenceError(RuntimeError):
    pass


class SectorLeakError(RuntimeError):
    pass


def spin_up(index: int, site: str) -> bool:
    return bool((index >> SITE_BIT[site]) & 1)


def total_sz(index: int) -> float:
    """Total S_z of basis state ``index`` (each spin contributes +-1/2)."""
    if not 0 <= int(index) < DIM or int(index) != index:
        raise ValueError(f"basis index must be an integer in 0..7, got {index!r}")
    ups = bin(int(index)).count("1")
    return ups - 1.5


def basis_index(spins: str) -> int:
    """Index of a product ket written in A, C, B order, e.g. ``"udu"`` or ``"↑↓↑"``."""
    table = {"u": 1, "d": 0, "↑": 1, "↓": 0, "1": 1, "0": 0}
    if len(spins) != 3:
        raise ValueError(f"need three spins in A, C, B order, got {spins!r}")
    a, c, b = (table[s] for s in spins)
    return 4 * a + 2 * c + b


def sz_operator(site: str) -> np.ndarray:
    diag = [0.5 if spin_up(i, site) else -0.5 for i in range(DIM)]
    return np.diag(diag)


def raising_operator(site: str) -> np.ndarray:
    op = np.zeros((DIM, DIM))
    bit = 1 << SITE_BIT[site]
    for i in range(DIM):
        if not i & bit:
            op[i | bit, i] = 1.0
    return op


def lowering_operator(site: str) -> np.ndarray:
    return raising_operator(site).T.copy()


def build_hamiltonian(p: ModelParams) -> np.ndarray:
    """Real symmetric 8x8 matrix of the dimensionless chain Hamiltonian."""
    sa, sb, sc = sz_operator("A"), sz_operator("B"), sz_operator("C")
    flip = np.zeros((DIM, DIM))
    for edge in ("A", "B"):
        hop = raising_operator(edge) @ lowering_operator("C")
        flip += hop + hop.T
    ham = (1 + 2 * p.x) * (sa @ sc + sb @ sc) + 0.5 * (1 - p.x) * flip
    ham += p.y * (sa + sb + sc)
    return ham


def _sector_of(vector: np.ndarray) -> tuple[float, float]:
    weights = {s: 0.0 for s in SZ_SECTORS}
    for i, amp in enumerate(vector):
        weights[total_sz(i)] += float(abs(amp) ** 2)
    best = max(weights, key=weights.get)
    return best, 1.0 - weights[best] / sum(weights.values())


def jacobi_eigh(mats: np.ndarray, max_sweeps: int = JACOBI_MAX_SWEEPS,
                rel_tol: float = JACOBI_REL_TOL):
    """Cyclic Jacobi eigensolver for a stack of real symmetric matrices.

    Returns ``(eigenvalues, eigenvectors, residual, sweeps)`` with eigenvectors
    as columns, unsorted. ``residual`` is the largest off-diagonal Frobenius
    norm over the stack relative to the matrix norm. Pairs whose off-diagonal
    element is exactly zero are left untouched, so exact block structure is
    preserved.
    """
    a = np.array(mats, dtype=float, copy=True)
    single = a.ndim == 2
    if single:
        a = a[None]
    count, n, _ = a.shape
    if not np.allclose(a, np.swapaxes(a, 1, 2), rtol=0, atol=0):
        raise ValueError("jacobi_eigh needs symmetric input")
    v = np.broadcast_to(np.eye(n), a.shape).copy()
    norm = np.sqrt(np.einsum("kij,kij->k", a, a))
    scale = np.where(norm > 0, norm, 1.0)
    upper = np.triu_indices(n, 1)

    def off_norm():
        return np.sqrt(2 * np.sum(a[:, upper[0], upper[1]] ** 2, axis=1)) / scale

    sweeps = 0
    resid = off_norm()
    while np.max(resid) >= rel_tol:
        if sweeps >= max_sweeps:
            raise JacobiConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps, residual {np.max(resid):.3e}")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                active = apq != 0
                if not active.any():
                    continue
                safe = np.where(active, apq, 1.0)
                theta = (a[:, q, q] - a[:, p, p]) / (2 * safe)
                t = np.sign(theta) / (np.abs(theta) + np.sqrt(theta * theta + 1))
                t = np.where(theta == 0, 1.0, t)
                t = np.where(active, t, 0.0)
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                app, aqq = a[:, p, p] - t * apq, a[:, q, q] + t * apq
                c_, s_ = c[:, None], s[:, None]
                rp, rq = a[:, p, :].copy(), a[:, q, :].copy()
                a[:, p, :] = c_ * rp - s_ * rq
                a[:, q, :] = s_ * rp + c_ * rq
                cp, cq = a[:, :, p].copy(), a[:, :, q].copy()
                a[:, :, p] = c_ * cp - s_ * cq
                a[:, :, q] = s_ * cp + c_ * cq
                a[:, p, p], a[:, q, q] = app, aqq
                a[:, p, q] = np.where(active, 0.0, a[:, p, q])
                a[:, q, p] = a[:, p, q]
                vp, vq = v[:, :, p].copy(), v[:, :, q].copy()
                v[:, :, p] = c_ * vp - s_ * vq
                v[:, :, q] = s_ * vp + c_ * vq
        sweeps += 1
        resid = off_norm()
    evals = np.diagonal(a, axis1=1, axis2=2).copy()
    if single:
        return evals[0], v[0], float(resid[0]), sweeps
    return evals, v, float(np.max(resid)), sweeps


def _canonical_sign(vec: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(np.abs(vec) > 1e-12)
    if nz.size and vec[nz[0]] < 0:
        return -vec
    return vec


def _eigensystem(evals: np.ndarray, evecs: np.ndarray, resid: float, sweeps: int) -> EigenSystem:
    order = np.argsort(evals, kind="stable")
    levels = []
    for rank, k in enumerate(order):
        vec = _canonical_sign(evecs[:, k])
        sz, leak = _sector_of(vec)
        if leak >= SECTOR_LEAK_TOL:
            raise SectorLeakError(f"eigenvector {rank} leaks {leak:.2e} outside S_z={sz}")
        levels.append(Level(float(evals[k]), vec, sz, f"#{rank}"))
    return EigenSystem(tuple(levels), resid, sweeps)


def diagonalize(m: np.ndarray) -> EigenSystem:
    """Full eigensystem of a symmetric 8x8 matrix, energies ascending."""
    evals, evecs, resid, sweeps = jacobi_eigh(m)
    return _eigensystem(evals, evecs, resid, sweeps)


def diagonalize_many(mats: Sequence[np.ndarray]) -> list[EigenSystem]:
    """Batched version of :func:`diagonalize`; all matrices share the sweep loop."""
    evals, evecs, resid, sweeps = jacobi_eigh(np.asarray(mats))
    if evals.ndim == 1:
        evals, evecs = evals[None], evecs[None]
    return [_eigensystem(e, v, resid, sweeps) for e, v in zip(evals, evecs)]


def numeric_levels(p: ModelParams) -> EigenSystem:
    return diagonalize(build_hamiltonian(p))
