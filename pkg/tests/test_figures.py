from __future__ import annotations

import math
import os
import re

import pytest

from spintrio.critical import locate_qpt_x
from spintrio.figures import FIGURES, figures
from spintrio.sweep import read_csv


@pytest.fixture(scope="module")
def outdir(tmp_path_factory):
    path = tmp_path_factory.mktemp("figs")
    figures(str(path))
    return path


def _rows(outdir, name):
    return read_csv(str(outdir / f"{name}.csv"))


def test_every_figure_written(outdir):
    for name in FIGURES:
        assert (outdir / f"{name}.csv").stat().st_size > 0
        assert (outdir / f"{name}.gp").stat().st_size > 0
    assert sorted(FIGURES) == [f"fig{k:02d}" for k in range(2, 14)]


def test_scripts_only_read_their_csv(outdir):
    for name in FIGURES:
        text = (outdir / f"{name}.gp").read_text()
        files = set(re.findall(r"'([^']+\.(?:csv|dat|txt))'", text))
        assert files == {f"{name}.csv"}
        header = (outdir / f"{name}.csv").read_text().splitlines()[0].split(",")
        for col in re.findall(r"\$(\d+)", text):
            assert 1 <= int(col) <= len(header)
        for using in re.findall(r"using (\d+):", text):
            assert 1 <= int(using) <= len(header)


def test_fig02_levels_cross_at_minus_two(outdir):
    rows = _rows(outdir, "fig02")
    # the lower of E1/E8 against the lower of E3/E5
    sign = [min(r["E1"], r["E8"]) - min(r["E3"], r["E5"]) for r in rows]
    cross = [r["x"] for r, a, b in zip(rows[1:], sign, sign[1:]) if a < 0 <= b]
    assert len(cross) == 1 and abs(cross[0] + 2) < 0.011


def _step_checks(rows, key, jump_at):
    below = [r for r in rows if r[key] < jump_at - 1e-9]
    above = [r for r in rows if r[key] > jump_at + 1e-9]
    assert all(r["C_AC"] == 0 and r["C_AB"] == 0 for r in below)
    assert above[0]["C_AC"] > 0.1


def test_fig03_zero_field(outdir):
    rows = _rows(outdir, "fig03")
    _step_checks(rows, "x", -2.0)
    at_one = [r for r in rows if abs(r["x"] - 1) < 1e-9]
    assert at_one[0]["C_AC"] == 0.0
    near = [r["C_AC"] for r in rows if 0.9 < r["x"] < 1.1 and abs(r["x"] - 1) > 1e-9]
    assert min(near) > 0


def test_fig06_finite_field(outdir):
    rows = _rows(outdir, "fig06")
    _step_checks(rows, "x", locate_qpt_x(0.5).value)
    assert [r for r in rows if abs(r["x"] - 1) < 1e-9][0]["C_AC"] == 0.0


def test_fig07_step_at_critical_field(outdir):
    rows = _rows(outdir, "fig07")
    y_c = (6 + math.sqrt(6)) / 4
    before = [r for r in rows if r["y"] < y_c]
    after = [r for r in rows if r["y"] > y_c]
    assert len({r["C_AC"] for r in before}) == 1 and before[0]["C_AC"] > 0.4
    assert len({r["C_AB"] for r in before}) == 1 and before[0]["C_AB"] > 0.09
    assert all(r["C_AC"] == 0 and r["C_AB"] == 0 for r in after)


def test_figure_parameter_sets(outdir):
    assert {r["T"] for r in _rows(outdir, "fig08")} == {0.0, 0.1, 0.3, 0.5, 1.5}
    assert {r["y"] for r in _rows(outdir, "fig08")} == {0.0}
    assert {r["x"] for r in _rows(outdir, "fig09")} == {-1.5, -1.0, -0.55}
    assert {r["y"] for r in _rows(outdir, "fig10")} == {0.1, 0.5, 1.0}
    assert {r["T"] for r in _rows(outdir, "fig11")} == {0.0, 0.5, 2.0}
    assert {r["x"] for r in _rows(outdir, "fig12")} == {-1.5, -1.0, -0.5}
    assert {0.0, 0.5, 1.0} <= {r["y"] for r in _rows(outdir, "fig13")}


def test_fig10_threshold_ordering(outdir):
    for r in _rows(outdir, "fig10"):
        assert r["T_C2"] <= r["T_C1"]
        if abs(r["x"] - 1) < 1e-9:
            assert r["T_C1"] == 0 and r["T_C2"] == 0


def test_fig13_gap_temperature(outdir):
    rows = _rows(outdir, "fig13")
    for y in (0.0, 0.5, 1.0):
        curve = [r for r in rows if r["y"] == y]
        assert len(curve) == 121 and max(r["T_E"] for r in curve) > 0


def test_unwritable_directory_reports_path(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    target = os.path.join(str(blocker), "sub")
    with pytest.raises(OSError) as info:
        figures(target, ["fig02"])
    assert str(blocker) in str(info.value)
