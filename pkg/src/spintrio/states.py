"""Ground-state and thermal density matrices built from a set of levels."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .model import EigenSystem, Level, ModelParams, numeric_levels
from .spectrum import analytic_levels

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10


def degeneracy_tol(energy: float) -> float:
    return 1e-9 * max(1.0, abs(energy))


def levels_for(p: ModelParams, backend: str = "analytic") -> EigenSystem:
    """Eigensystem from the closed forms (default) or from the Jacobi solver."""
    if backend == "analytic":
        return analytic_levels(p)
    if backend == "numeric":
        return numeric_levels(p)
    raise ValueError(f"unknown backend {backend!r}; use 'analytic' or 'numeric'")


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Validate a 2-, 4- or 8-dimensional density matrix and return it."""
    rho = np.asarray(rho)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4, 8):
        raise ValueError(f"density matrix must be square of size 2, 4 or 8, got {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL:
        raise ValueError(f"density matrix trace is {np.trace(rho).real!r}, not 1")
    if np.linalg.eigvalsh(rho).min() < -PSD_TOL:
        raise ValueError("density matrix has a negative eigenvalue")
    return rho


def projector_mixture(vectors: Iterable[np.ndarray], weights: Iterable[float]) -> np.ndarray:
    rho = np.zeros((8, 8))
    for vec, w in zip(vectors, weights):
        rho += w * np.outer(vec, vec.conj()).real
    return rho


@dataclass(frozen=True)
class GroundStateInfo:
    energy: float
    degeneracy: int
    member_labels: tuple[str, ...]
    rho: np.ndarray

    @property
    def purity(self) -> float:
        return float(np.trace(self.rho @ self.rho).real)

    @property
    def is_pure(self) -> bool:
        return self.degeneracy == 1


@dataclass(frozen=True)
class ThermoState:
    temperature: float
    rho: np.ndarray
    log_partition: float
    internal_energy: float


def ground_state(levels: EigenSystem | Iterable[Level], tol: float | None = None) -> GroundStateInfo:
    """Equal-weight mixture of every level within ``tol`` of the lowest energy."""
    levels = list(levels)
    if len(levels) != 8:
        raise ValueError(f"expected 8 levels, got {len(levels)}")
    e_min = min(lv.energy for lv in levels)
    tol = degeneracy_tol(e_min) if tol is None else tol
    members = [lv for lv in levels if lv.energy - e_min <= tol]
    members.sort(key=lambda lv: lv.label)
    g = len(members)
    rho = projector_mixture((lv.vector for lv in members), [1.0 / g] * g)
    return GroundStateInfo(e_min, g, tuple(lv.label for lv in members), rho)


def boltzmann_weights(energies, temperature: float) -> tuple[np.ndarray, float]:
    """Normalized Boltzmann weights and ``log Z``, using shifted exponentials."""
    if not temperature > 0:
        raise ValueError(f"temperature must be positive, got {temperature}; use ground_state for T=0")
    energies = np.asarray(energies, dtype=float)
    e_min = energies.min()
    boltz = np.exp(-(energies - e_min) / temperature)
    total = boltz.sum()
    return boltz / total, float(math.log(total) - e_min / temperature)


def thermal_state(levels: EigenSystem | Iterable[Level], temperature: float) -> ThermoState:
    levels = list(levels)
    energies = np.array([lv.energy for lv in levels])
    weights, log_z = boltzmann_weights(energies, temperature)
    rho = projector_mixture((lv.vector for lv in levels), weights)
    return ThermoState(temperature, rho, log_z, float(weights @ energies))


def partition_function(levels: EigenSystem | Iterable[Level], temperature: float) -> float:
    """Z = sum_k exp(-E_k/T). Overflows to inf for very low T; prefer ``log_partition``."""
    energies = [lv.energy for lv in levels]
    _, log_z = boltzmann_weights(energies, temperature)
    with np.errstate(over="ignore"):
        return float(np.exp(log_z))


def log_partition(levels: EigenSystem | Iterable[Level], temperature: float) -> float:
    return boltzmann_weights([lv.energy for lv in levels], temperature)[1]


def internal_energy(levels: EigenSystem | Iterable[Level], temperature: float) -> float:
    energies = np.array([lv.energy for lv in levels])
    weights, _ = boltzmann_weights(energies, temperature)
    return float(weights @ energies)


def internal_energy_from_energies(energies: np.ndarray, temperature) -> np.ndarray:
    """Thermal energy for an array of temperatures (all > 0)."""
    temperature = np.asarray(temperature, dtype=float)
    energies = np.asarray(energies, dtype=float)
    shifted = energies - energies.min()
    boltz = np.exp(-shifted[None, :] / temperature.reshape(-1, 1))
    out = (boltz @ energies) / boltz.sum(axis=1)
    return out.reshape(temperature.shape)
