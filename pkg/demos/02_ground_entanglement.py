"""
Ground-state entanglement
=========================

Pairwise concurrences of the ground state, from the X-state formula and from
the Wootters construction, plus the three-tangle bookkeeping.
"""
from __future__ import annotations

import math

import numpy as np

from spintrio import (ModelParams, analytic_levels, closed_form_ground, ghz_state, ground_state, report,
                      w_state)

# %%
# Reference states: GHZ carries only three-party entanglement, W only pairwise.
for name, psi in (("GHZ", ghz_state()), ("W", w_state())):
    rep = report(np.outer(psi, psi))
    print(f"{name:3}: C_AC={rep.c_ac:.4f} C_AB={rep.c_ab:.4f} residual(A)={rep.residual['A']:.4f}")

# %%
# Isotropic point: the zero-field ground level is doubly degenerate and the
# ground state is the equal mixture.
gs = ground_state(analytic_levels(ModelParams(0.0, 0.0)))
rep = report(gs.rho)
print("members:", gs.member_labels, " C_AC =", rep.c_ac, " C_AB =", rep.c_ab)

# %%
# Zero-field scan: nothing below x = -2, a jump there, a dip to zero at x = 1,
# and saturation at large x.
for x in (-2.5, -1.999, -1.0, 0.0, 1.0, 3.0, 1e4):
    rep = report(ground_state(analytic_levels(ModelParams(x, 0.0))).rho)
    print(f"x = {x:>8}: C_AC = {rep.c_ac:.6f}  C_AB = {rep.c_ab:.6f}")
print("large-x limit:", (1 + 2 * math.sqrt(3)) / (6 + 2 * math.sqrt(3)))

# %%
# In a small positive field the ground state is the pure level psi5; its
# residual entanglement vanishes for every focus qubit.
p = ModelParams(0.5, 0.5)
gs = ground_state(analytic_levels(p))
rep = report(gs.rho)
print("pure:", gs.is_pure, " closed forms:", closed_form_ground(p))
print("residual:", {k: f"{v:.1e}" for k, v in rep.residual.items()})
