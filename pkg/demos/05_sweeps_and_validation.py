"""
Sweeps, figure data and the invariant suite
===========================================

The same functionality is available on the command line as
``spintrio sweep``, ``spintrio figures`` and ``spintrio validate``.
"""
from __future__ import annotations

import tempfile

from spintrio import SweepSpec, read_csv, run_sweep, validate, write_csv
from spintrio.figures import figures

# %%
# A zero-temperature field sweep at x = 0.5: constant concurrences up to the
# critical field, zero beyond.
spec = SweepSpec("y", 1.5, 2.5, 11, x=0.5, quantities=("energies", "C_AC", "C_AB"), check=True)
rows = run_sweep(spec)
text = write_csv(rows, spec.columns())
print(text)
assert read_csv(text) == rows  # 17 significant digits round-trip exactly

# %%
# Figure data: one CSV and one gnuplot script per figure.
with tempfile.TemporaryDirectory() as tmp:
    written = figures(tmp, ["fig02", "fig07"])
    print("\n".join(written))
    print(open(written[1]).read())

# %%
# Every invariant on the default grid.
print(validate().summary())
