from __future__ import annotations

import re

import pytest

from linkforge.diagram import parse_pd

TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
HOPF_PD = "X(1,4,2,3) X(3,2,4,1)"

_CRITERIA: dict[int, list[str]] = {}


@pytest.fixture
def trefoil():
    return parse_pd(TREFOIL_PD)


@pytest.fixture
def hopf():
    return parse_pd(HOPF_PD)


def pytest_runtest_logreport(report):
    m = re.search(r"test_criterion_(\d+)", report.nodeid)
    if m is None:
        return
    if report.when == "call" or report.outcome != "passed":
        _CRITERIA.setdefault(int(m.group(1)), []).append(report.outcome)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        ok = all(o == "passed" for o in _CRITERIA[k])
        terminalreporter.write_line(f"criterion {k:>2}: {'PASS' if ok else 'FAIL'}")
