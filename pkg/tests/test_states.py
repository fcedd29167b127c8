from __future__ import annotations

import math

import numpy as np
import pytest

from spintrio.model import ModelParams
from spintrio.spectrum import analytic_levels
from spintrio.states import (boltzmann_weights, check_density_matrix, ground_state, internal_energy,
                             internal_energy_from_energies, levels_for, log_partition, partition_function,
                             thermal_state)


def test_ground_state_degeneracy_at_zero_field():
    gs = ground_state(analytic_levels(ModelParams(0.0, 0.0)))
    assert gs.degeneracy == 2
    assert gs.member_labels == ("psi3", "psi5")
    assert gs.energy == pytest.approx(-1.0)
    assert gs.purity == pytest.approx(0.5)


def test_ground_state_four_fold_at_crossing():
    gs = ground_state(analytic_levels(ModelParams(-2.0, 0.0)))
    assert gs.degeneracy == 4
    assert set(gs.member_labels) == {"psi1", "psi3", "psi5", "psi8"}


def test_pure_ground_state_in_field():
    gs = ground_state(analytic_levels(ModelParams(0.5, 0.5)))
    assert gs.is_pure and gs.member_labels == ("psi5",)
    assert gs.purity == pytest.approx(1.0)
    check_density_matrix(gs.rho)


def test_backends_agree_on_ground_state():
    for x, y in [(-2.5, 0.0), (-0.4, 0.0), (0.5, 0.5), (2.0, 3.0)]:
        p = ModelParams(x, y)
        a = ground_state(levels_for(p, "analytic"))
        n = ground_state(levels_for(p, "numeric"))
        assert a.degeneracy == n.degeneracy
        assert np.abs(a.rho - n.rho).max() < 1e-12


def test_unknown_backend():
    with pytest.raises(ValueError):
        levels_for(ModelParams(0.0), "magic")


def test_thermal_state_partition_function():
    levels = analytic_levels(ModelParams(0.5, 0.5))
    th = thermal_state(levels, 0.7)
    z = sum(math.exp(-lv.energy / 0.7) for lv in levels)
    assert th.log_partition == pytest.approx(math.log(z), rel=1e-14)
    assert partition_function(levels, 0.7) == pytest.approx(z, rel=1e-13)
    assert log_partition(levels, 0.7) == pytest.approx(math.log(z), rel=1e-14)
    assert np.trace(th.rho) == pytest.approx(1.0, abs=1e-14)
    check_density_matrix(th.rho)


def test_thermal_low_temperature_is_finite():
    levels = analytic_levels(ModelParams(0.5, 0.5))
    th = thermal_state(levels, 1e-4)
    assert np.isfinite(th.log_partition)
    assert np.abs(th.rho - ground_state(levels).rho).max() < 1e-12


def test_internal_energy_limits():
    levels = analytic_levels(ModelParams(0.2, 0.3))
    energies = [lv.energy for lv in levels]
    assert internal_energy(levels, 1e-3) == pytest.approx(min(energies), abs=1e-9)
    # infinite temperature: plain average, which is zero for a traceless H
    assert internal_energy(levels, 1e9) == pytest.approx(0.0, abs=1e-8)
    temps = np.array([0.1, 1.0, 10.0])
    batch = internal_energy_from_energies(np.array(energies), temps)
    assert np.allclose(batch, [internal_energy(levels, t) for t in temps], atol=1e-14)


@pytest.mark.parametrize("temp", [0.0, -1.0])
def test_nonpositive_temperature_rejected(temp):
    with pytest.raises(ValueError):
        boltzmann_weights([0.0, 1.0], temp)


def test_check_density_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        check_density_matrix(np.eye(3) / 3)
    with pytest.raises(ValueError):
        check_density_matrix(np.eye(4))
    bad = np.diag([1.5, -0.5])
    with pytest.raises(ValueError):
        check_density_matrix(bad)
