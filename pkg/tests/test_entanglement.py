from __future__ import annotations

import math

import numpy as np
import pytest

from spintrio.entanglement import (OutOfRegimeError, XStateElements, XStateStructureError, closed_form_ground,
                                   closed_form_thermal_elements, concurrence_wootters, concurrence_xstate,
                                   ghz_state, one_tangle, pair_concurrence, partial_trace, report,
                                   thermal_concurrence, thermal_log_margin, thermal_margin, w_state,
                                   xstate_elements)
from spintrio.model import ModelParams, basis_index
from spintrio.spectrum import analytic_levels
from spintrio.states import ground_state, levels_for, thermal_state


def _product(a, c, b):
    return np.einsum("i,j,k->ijk", a, c, b).reshape(8)


def test_partial_trace_of_product_state():
    up, down, plus = np.array([0, 1.0]), np.array([1.0, 0]), np.array([1, 1]) / math.sqrt(2)
    psi = _product(up, plus, down)
    rho = np.outer(psi, psi)
    assert np.allclose(partial_trace(rho, "A"), np.outer(up, up))
    assert np.allclose(partial_trace(rho, "C"), np.outer(plus, plus))
    assert np.allclose(partial_trace(rho, "B"), np.outer(down, down))
    assert np.allclose(partial_trace(rho, "AB"), np.outer(np.kron(up, down), np.kron(up, down)))
    assert np.allclose(partial_trace(rho, "CA"), np.outer(np.kron(plus, up), np.kron(plus, up)))


@pytest.mark.parametrize("keep", ["", "ABC", "AA", "Q"])
def test_partial_trace_rejects_bad_keep(keep):
    with pytest.raises(ValueError):
        partial_trace(np.eye(8) / 8, keep)


def test_pair_basis_matches_three_site_basis():
    # |u d u>: the AC pair is |u d>, i.e. pair index 2 (w1 slot)
    psi = np.zeros(8)
    psi[basis_index("udu")] = 1.0
    rho = np.outer(psi, psi)
    assert partial_trace(rho, "AC")[2, 2] == 1.0
    assert partial_trace(rho, "CA")[1, 1] == 1.0
    assert partial_trace(rho, "AB")[3, 3] == 1.0


def test_bell_state_concurrence():
    bell = np.zeros(4)
    bell[1] = bell[2] = 1 / math.sqrt(2)
    rho = np.outer(bell, bell)
    assert concurrence_wootters(rho) == pytest.approx(1.0, abs=1e-12)
    assert concurrence_xstate(xstate_elements(rho)) == pytest.approx(1.0, abs=1e-15)


def test_werner_threshold():
    bell = np.zeros(4)
    bell[1], bell[2] = 1 / math.sqrt(2), -1 / math.sqrt(2)
    for p, expected in [(0.2, 0.0), (1 / 3, 0.0), (0.6, 0.4), (1.0, 1.0)]:
        rho = p * np.outer(bell, bell) + (1 - p) * np.eye(4) / 4
        assert concurrence_wootters(rho) == pytest.approx(expected, abs=1e-12)
        assert concurrence_xstate(xstate_elements(rho)) == pytest.approx(expected, abs=1e-12)


def test_xstate_structure_error():
    rho = np.full((4, 4), 0.25)
    with pytest.raises(XStateStructureError):
        xstate_elements(rho)


def test_xstate_elements_round_trip():
    e = XStateElements(u=0.2, v=0.1, w1=0.3, w2=0.4, offdiag=0.15)
    back = xstate_elements(e.as_matrix())
    assert (back.u, back.v, back.w1, back.w2, back.offdiag) == (0.2, 0.1, 0.3, 0.4, 0.15)
    scaled = XStateElements(2.0, 1.0, 3.0, 4.0, 1.5, scale=10.0)
    assert concurrence_xstate(scaled) == pytest.approx(concurrence_xstate(scaled.normalized()))


def test_one_tangle_bounds():
    assert one_tangle(np.eye(2) / 2) == pytest.approx(1.0)
    assert one_tangle(np.diag([1.0, 0.0])) == 0.0
    with pytest.raises(ValueError):
        one_tangle(np.eye(4))


def test_ghz_and_w_reports():
    rep = report(np.outer(ghz_state(), ghz_state()))
    assert rep.c_ac == rep.c_bc == rep.c_ab == 0.0
    assert rep.residual_is_monotone
    rep = report(np.outer(w_state(), w_state()))
    assert rep.concurrence("CA") == pytest.approx(2 / 3, abs=1e-12)
    assert rep.tau1["A"] == pytest.approx(8 / 9)


def test_report_marks_mixed_states():
    rep = report(ground_state(analytic_levels(ModelParams(0.0, 0.0))).rho)
    assert not rep.residual_is_monotone
    assert rep.purity == pytest.approx(0.5)


def test_pair_concurrence_cross_check():
    rho = ground_state(analytic_levels(ModelParams(0.5, 0.5))).rho
    assert pair_concurrence(rho, "AC") == pytest.approx(0.408248290463863, abs=1e-12)
    assert pair_concurrence(rho, "AB") == pytest.approx(0.091751709536137, abs=1e-12)


def test_closed_form_ground_frozen_values():
    c_ac, c_ab = closed_form_ground(ModelParams(0.0, 0.0))
    assert (c_ac, c_ab) == (pytest.approx(0.5), pytest.approx(0.0, abs=1e-15))
    assert closed_form_ground(ModelParams(-2.5, 0.0)) == (0.0, 0.0)
    c_ac, c_ab = closed_form_ground(ModelParams(0.5, 0.5))
    assert c_ac == pytest.approx(0.408248290463863, abs=1e-12)
    assert c_ab == pytest.approx(0.091751709536137, abs=1e-12)


@pytest.mark.parametrize("x,y", [(-2.0, 0.0), (0.5, 3.0), (0.0, -0.1)])
def test_closed_form_ground_out_of_regime(x, y):
    with pytest.raises(OutOfRegimeError):
        closed_form_ground(ModelParams(x, y))


def test_closed_form_ground_matches_numeric_states():
    for x in np.linspace(-1.9, 3, 12):
        for y in (0.0, 0.3, 1.0):
            p = ModelParams(float(x), y)
            try:
                c_ac, c_ab = closed_form_ground(p)
            except OutOfRegimeError:
                continue
            rep = report(ground_state(levels_for(p, "numeric")).rho)
            assert rep.c_ac == pytest.approx(c_ac, abs=1e-10)
            assert rep.c_ab == pytest.approx(c_ab, abs=1e-10)


def test_bc_equals_ac():
    p = ModelParams(-0.6, 0.4)
    for t in (0.05, 0.5, 5.0):
        ac = closed_form_thermal_elements(p, t, "AC").normalized()
        ca = closed_form_thermal_elements(p, t, "CA").normalized()
        assert (ac.w1, ac.w2) == (ca.w2, ca.w1)
        assert thermal_concurrence(p, [t], "AC")[0] == pytest.approx(thermal_concurrence(p, [t], "BC")[0])


def test_thermal_elements_match_partial_trace_zero_field():
    # zero field uses its own reduced coefficient table
    for x in (-2.5, -1.0, 0.0, 1.0, 2.0):
        p = ModelParams(x, 0.0)
        for t in (0.1, 1.0):
            rho = thermal_state(levels_for(p, "numeric"), t).rho
            for pair in ("AC", "BC", "AB"):
                num = xstate_elements(partial_trace(rho, pair))
                ref = closed_form_thermal_elements(p, t, pair).normalized()
                assert abs(num.offdiag - ref.offdiag) < 1e-12
                assert abs(num.u - ref.u) < 1e-12 and abs(num.v - ref.v) < 1e-12


def test_thermal_concurrence_no_false_positive_when_cold():
    # below the zero-field crossing the thermal state is separable at every T
    p = ModelParams(-2.5, 0.0)
    temps = np.geomspace(1e-4, 10, 200)
    assert np.all(thermal_concurrence(p, temps, "AC") == 0.0)
    assert np.all(thermal_log_margin(p, temps, "AC") < 0)


def test_thermal_margin_sign_agrees_with_log_margin():
    p = ModelParams(0.5, 0.5)
    temps = np.geomspace(0.05, 3, 100)
    lin = thermal_margin(p, temps, "AC")
    log = thermal_log_margin(p, temps, "AC")
    assert np.array_equal(lin > 0, log > 0)


def test_thermal_requires_positive_temperature():
    with pytest.raises(ValueError):
        thermal_concurrence(ModelParams(0.0), [0.0], "AC")
    with pytest.raises(ValueError):
        closed_form_thermal_elements(ModelParams(0.0), 1.0, "AX")


@pytest.mark.parametrize("x", [-1.9, -1.0, 0.0, 0.5, 2.0, 5.0])
def test_zero_temperature_limit_is_continuous_at_zero_field(x):
    # checked numerically only; the degenerate ground mixture is the T -> 0 limit
    p = ModelParams(x, 0.0)
    ground = report(ground_state(analytic_levels(p)).rho)
    for pair in ("AC", "AB"):
        cold = thermal_concurrence(p, [1e-3, 1e-4], pair)
        assert np.abs(cold - ground.concurrence(pair)).max() < 1e-8
