from __future__ import annotations

import math

import numpy as np
import pytest

from spintrio.critical import (bisect, collinear_field_limit, critical_field, gap_temperature, locate_qpt_x,
                               locate_qpt_y, product_energy, product_energy_3d, separable_energy,
                               separable_energy_closed_form, threshold_temperature)
from spintrio.entanglement import thermal_concurrence
from spintrio.model import ModelParams
from spintrio.states import internal_energy, levels_for


def test_bisect():
    root, lo, hi = bisect(lambda t: t * t - 2, 0.0, 2.0)
    assert root == pytest.approx(math.sqrt(2), abs=1e-12)
    assert lo <= math.sqrt(2) <= hi
    with pytest.raises(ValueError):
        bisect(lambda t: t * t + 1, 0.0, 1.0)


def test_qpt_frozen_values():
    assert locate_qpt_x(0.0).value == pytest.approx(-2.0, abs=1e-12)
    assert locate_qpt_x(0.5).value == pytest.approx((-3 - math.sqrt(21)) / 6, abs=1e-10)
    assert locate_qpt_x(0.5).detail == "psi8 -> psi5"
    assert locate_qpt_y(1.0).value == pytest.approx(3.0, abs=1e-10)
    assert not locate_qpt_y(-3.0).found


def test_qpt_y_matches_critical_field():
    for x in (-1.0, 0.0, 0.5, 2.0):
        cp = locate_qpt_y(x)
        assert cp.value == pytest.approx(critical_field(x), abs=1e-10)
        assert cp.residual < 1e-12


def test_qpt_x_rejects_negative_field():
    with pytest.raises(ValueError):
        locate_qpt_x(-0.1)


def test_product_energy_reference_configurations():
    p = ModelParams(0.5, 0.5)
    # all down is the polarized level psi8
    assert product_energy(p, math.pi, math.pi, math.pi) == pytest.approx((1 + 2 * 0.5 - 3 * 0.5) / 2)
    assert product_energy(p, math.pi, 0.0, math.pi) == pytest.approx(separable_energy_closed_form(p))


def test_separable_energy_frozen_values():
    assert separable_energy(ModelParams(0.5, 0.5)).value == pytest.approx(-1.25, abs=1e-12)
    assert separable_energy(ModelParams(0.0, 0.0)).value == pytest.approx(-0.5, abs=1e-12)
    assert separable_energy(ModelParams(-2.0, 0.0)).value == pytest.approx(-1.5, abs=1e-12)
    assert separable_energy(ModelParams(1.0, 0.0)).value == pytest.approx(-1.5, abs=1e-12)


def _one_dimensional_minimum(p: ModelParams) -> float:
    # edge spins share an angle; for fixed centre angle the edge term is
    # 2 (a cos t + b sin t) with minimum -2 sqrt(a^2 + b^2)
    zz, xx = (1 + 2 * p.x) / 4, (1 - p.x) / 4
    tc = np.linspace(0, 2 * math.pi, 200001)
    a = zz * np.cos(tc) + p.y / 2
    b = xx * np.sin(tc)
    return float(np.min(p.y / 2 * np.cos(tc) - 2 * np.sqrt(a * a + b * b)))


def test_separable_energy_against_one_dimensional_reduction():
    rng = np.random.default_rng(5)
    for _ in range(40):
        p = ModelParams(float(rng.uniform(-3, 3)), float(rng.uniform(0, 3)))
        assert separable_energy(p).value == pytest.approx(_one_dimensional_minimum(p), abs=1e-8)


def test_random_product_states_never_beat_coplanar_minimum():
    rng = np.random.default_rng(6)
    for x, y in [(0.5, 0.5), (-1.5, 0.2), (2.0, 1.0), (-0.3, 0.0)]:
        p = ModelParams(x, y)
        e_sep = separable_energy(p).value
        dirs = rng.normal(size=(100_000, 3, 3))
        dirs /= np.linalg.norm(dirs, axis=-1, keepdims=True)
        assert product_energy_3d(p, dirs).min() >= e_sep - 1e-9


def test_closed_form_validity_region():
    rng = np.random.default_rng(7)
    for _ in range(60):
        x = float(rng.uniform(0, 5))
        limit = collinear_field_limit(x)
        inside = ModelParams(x, float(rng.uniform(0, limit)))
        assert separable_energy(inside).value == pytest.approx(separable_energy_closed_form(inside), abs=1e-9)
        outside = ModelParams(x, float(limit * rng.uniform(1.01, 2.0)))
        assert separable_energy(outside).value < separable_energy_closed_form(outside) - 1e-9
    assert collinear_field_limit(0.0) == pytest.approx(0.5)
    assert collinear_field_limit(1.0) == pytest.approx(3.0)


@pytest.mark.parametrize("x,y,t_e,t_c1,t_c2", [
    (0.5, 0.5, 0.2814, 0.7822, 0.0838),
    (0.5, 0.1, 0.3329, 0.7756, 0.0168),
    (1.5, 0.5, 0.2502, 1.1430, 0.0593),
    (-1.0, 0.0, 0.4513, 0.6082, 0.3495),
])
def test_characteristic_temperatures_frozen(x, y, t_e, t_c1, t_c2):
    p = ModelParams(x, y)
    assert gap_temperature(p).value == pytest.approx(t_e, abs=1e-4)
    assert threshold_temperature(p, "AC").value == pytest.approx(t_c1, abs=1e-4)
    assert threshold_temperature(p, "AB").value == pytest.approx(t_c2, abs=1e-4)


def test_gap_temperature_defining_equation():
    p = ModelParams(0.5, 0.5)
    cp = gap_temperature(p)
    assert internal_energy(levels_for(p), cp.value) == pytest.approx(separable_energy(p).value, abs=1e-9)


def test_threshold_brackets_sign_change():
    p = ModelParams(0.5, 0.5)
    cp = threshold_temperature(p, "AC")
    lo, hi = cp.bracket
    assert thermal_concurrence(p, [lo * 0.999], "AC")[0] > 0
    assert thermal_concurrence(p, [hi * 1.001], "AC")[0] == 0


def test_isotropic_point_has_no_nnn_threshold():
    p = ModelParams(0.0, 0.0)
    assert not threshold_temperature(p, "AB").found
    assert threshold_temperature(p, "AC").value == pytest.approx(gap_temperature(p).value, abs=1e-6)


def test_below_zero_field_crossing_nothing_found():
    p = ModelParams(-2.5, 0.0)
    assert not threshold_temperature(p, "AC").found
    assert not threshold_temperature(p, "AB").found


def test_gap_temperature_none_when_ground_is_separable():
    assert not gap_temperature(ModelParams(1.0, 0.0)).found


def test_gap_temperature_not_monotone_in_field():
    values = [gap_temperature(ModelParams(0.5, y)).value for y in (0.1, 0.5, 1.0)]
    assert values[1] < values[0] and values[1] < values[2]
