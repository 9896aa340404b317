from __future__ import annotations

from collections import defaultdict

import pytest
from hypothesis import settings

settings.register_profile("repo", deadline=None, derandomize=True, print_blob=True)
settings.load_profile("repo")

CRITERIA = {
    1: "Schur design is an exact 11-design and fails at 12",
    2: "Schur's Hilbert identity holds coefficient by coefficient",
    3: "single-orbit 7-design scan up to n = 200",
    4: "two-orbit cubic scan and the 9-design quartic",
    5: "dimension-3 two-orbit 9-designs",
    6: "higher-degree numeric designs refine",
    7: "degree upper bounds table",
    8: "invariant harmonic dimensions",
    9: "oracle-equivalence property suites",
    10: "lattice suite",
}

_outcomes: dict[int, list[tuple[str, bool]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    number = _CRITERION_OF.get(report.nodeid)
    if number is not None:
        _outcomes[number].append((report.nodeid.split("::")[-1], report.passed))


_CRITERION_OF: dict[str, int] = {}


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark:
            _CRITERION_OF[item.nodeid] = mark.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        results = _outcomes.get(number)
        if not results:
            continue
        failed = [name for name, ok in results if not ok]
        status = "PASS" if not failed else "FAIL"
        line = f"criterion {number:2d} {status}: {CRITERIA[number]} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += " failing: " + ", ".join(failed)
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def leech_shell():
    from artifact.lattice import leech_minimal_shell

    return leech_minimal_shell()
