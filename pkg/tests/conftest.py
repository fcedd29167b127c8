from __future__ import annotations

import pytest

# criterion number -> (title, outcome); filled by the acceptance tests
ACCEPTANCE: dict[int, list] = {}


@pytest.fixture
def criterion(request):
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    ACCEPTANCE.setdefault(number, [title, "pass"])
    return number


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    entry = ACCEPTANCE.setdefault(number, [title, "pass"])
    if not rep.passed:
        entry[1] = "FAIL"
        if hasattr(rep, "wasxfail"):
            entry.append(f"known failure: {rep.wasxfail}")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, status, *notes = ACCEPTANCE[number]
        terminalreporter.write_line(f"[{status.upper():4}] {number:2d}. {title}")
        for note in notes:
            terminalreporter.write_line(f"         {note}")
