"""Exact spectrum, pairwise entanglement and critical behaviour of a three-qubit
open Heisenberg chain A-C-B with uniaxial anisotropy in a longitudinal field."""
from __future__ import annotations

__version__ = "0.1.0"

from .critical import (CriticalPoint, critical_field, gap_temperature, locate_qpt_x, locate_qpt_y,
                       separable_energy, separable_energy_closed_form, threshold_temperature)
from .entanglement import (EntanglementReport, XStateElements, closed_form_ground,
                           closed_form_thermal_elements, concurrence_wootters, concurrence_xstate,
                           ghz_state, one_tangle, pair_concurrence, partial_trace, report,
                           thermal_concurrence, w_state, xstate_elements)
from .model import EigenSystem, Level, ModelParams, build_hamiltonian, diagonalize, jacobi_eigh
from .spectrum import analytic_energies, analytic_levels, coefficients, verify_against_numeric
from .states import ground_state, levels_for, thermal_state
from .sweep import SweepSpec, read_csv, run_sweep, write_csv
from .validate import validate

__all__ = [
    "CriticalPoint", "EigenSystem", "EntanglementReport", "Level", "ModelParams", "SweepSpec",
    "XStateElements", "analytic_energies", "analytic_levels", "build_hamiltonian", "closed_form_ground",
    "closed_form_thermal_elements", "coefficients", "concurrence_wootters", "concurrence_xstate",
    "critical_field", "diagonalize", "gap_temperature", "ghz_state", "ground_state", "jacobi_eigh",
    "levels_for", "locate_qpt_x", "locate_qpt_y", "one_tangle", "pair_concurrence", "partial_trace",
    "read_csv", "report", "run_sweep", "separable_energy", "separable_energy_closed_form",
    "thermal_concurrence", "thermal_state", "threshold_temperature", "validate",
    "verify_against_numeric", "w_state", "write_csv", "xstate_elements",
]
