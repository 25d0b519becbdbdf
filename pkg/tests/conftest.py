"""Collects acceptance-criterion outcomes and prints one PASS/FAIL line each."""

from __future__ import annotations

import pytest

CRITERIA = {
    "1": "static backward slice of fig1 at print(sum) is Figure 2",
    "2": "static slice of fig6 at (9, {x}) is the whole program",
    "3": "forward slice of fig3 from sum = 1 is the affected statements",
    "4": "dynamic slice of fig6, n = 2, (9^1, {x}) drops x = 18; output 17",
    "5": "simultaneous dynamic slice of fig9 is Figure 10",
    "6": "conditioned slice of fig11, n = 1, (14, {sum}) is {1,2,3,4,6,7,14}",
    "7": "amorphous slices of fig13 on average and biggest",
    "7*": "amorphous slice on biggest has the exact Figure 14 syntax (non-blocking)",
    "8a": "Weiser soundness of static, conditioned and simultaneous slices",
    "8b": "slice lattice: dynamic, simultaneous, conditioned vs static",
    "8c": "oracle equivalence on random loop-free programs",
    "8d": "node-level backward/forward duality on every fixture PDG",
    "9": "cohesion of fig1 on {sum, product}",
}

_outcomes: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id): acceptance criterion a test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if report.when == "call" or (report.when == "setup" and not report.passed):
        for mark in item.iter_markers("criterion"):
            _outcomes.setdefault(mark.args[0], []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for key in CRITERIA:
        if key not in _outcomes:
            continue
        status = "PASS" if all(_outcomes[key]) else "FAIL"
        terminalreporter.write_line(f"{status} criterion {key}: {CRITERIA[key]}")
