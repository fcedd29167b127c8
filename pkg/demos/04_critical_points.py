"""
Level crossings, separable energy and characteristic temperatures
=================================================================
"""
from __future__ import annotations

import math

from spintrio import (ModelParams, critical_field, gap_temperature, locate_qpt_x, locate_qpt_y,
                      separable_energy, separable_energy_closed_form, threshold_temperature)
from spintrio.critical import collinear_field_limit

# %%
# Ground-level crossings located by bisection on the closed-form energies.
print("x_c(y=0)   =", locate_qpt_x(0.0).value)
print("x_c(y=0.5) =", locate_qpt_x(0.5).value, " exact:", (-3 - math.sqrt(21)) / 6)
print("y_c(x=0.5) =", locate_qpt_y(0.5).value, " closed form:", critical_field(0.5))

# %%
# Minimal product-state energy. The collinear up-down-up configuration gives
# (-1 - 2x - y)/2 until the field reaches collinear_field_limit(x); beyond it
# the spins cant and the minimum is lower.
for x, y in ((0.5, 0.5), (0.0, 0.3), (0.0, 1.0), (0.5, 2.5)):
    p = ModelParams(x, y)
    print(f"x={x}, y={y}: E_sep = {separable_energy(p).value:.6f}  collinear = "
          f"{separable_energy_closed_form(p):.6f}  limit y* = {collinear_field_limit(x):.4f}")

# %%
# Below T_E the thermal state is certainly entangled. The three temperatures
# are ordered T_C2 < T_E < T_C1 at these points.
for x, y in ((0.5, 0.5), (0.5, 0.1), (1.5, 0.5)):
    p = ModelParams(x, y)
    t_e = gap_temperature(p).value
    t_c1 = threshold_temperature(p, "AC").value
    t_c2 = threshold_temperature(p, "AB").value
    print(f"(x, y) = ({x}, {y}):  T_C2 = {t_c2:.4f}  T_E = {t_e:.4f}  T_C1 = {t_c1:.4f}")
