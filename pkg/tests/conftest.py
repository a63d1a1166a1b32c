"""Shared fixtures and the acceptance-criteria terminal summary."""

import pytest

from wtdesigns import orthonormal_basis

# One line per criterion is printed after the run, PASS/FAIL/NOT RUN.
CRITERIA = {
    1: "25-run one-generator shift table",
    2: "49-run closed-form shift and full shift scan",
    3: "recursive-design count table",
    4: "25-run and 49-run family comparison tables",
    5: "49-run linear-family zero-shift set",
    6: "full 7^6 shift scan, unique winner",
    7: "17-level two-zero counterexample",
    8: "second-order model diagnostics",
    9: "structural property sweeps",
}

_results = {}


def record_criterion(num: int, ok: bool, detail: str = ""):
    _results[num] = (bool(ok), detail)


@pytest.fixture
def acceptance():
    """Recorder: call acceptance(num, ok, detail) before asserting."""
    return record_criterion


@pytest.fixture(scope="session")
def basis5():
    return orthonormal_basis(5)


@pytest.fixture(scope="session")
def basis7():
    return orthonormal_basis(7)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        if num in _results:
            ok, detail = _results[num]
            verdict = "PASS" if ok else "FAIL"
        else:
            verdict, detail = "NOT RUN", ""
        line = f"criterion {num}: {verdict:7s} {CRITERIA[num]}"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
