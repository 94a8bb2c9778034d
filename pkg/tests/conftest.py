import numpy as np
import pytest

_CRITERIA = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240617)


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""

    def record(label, passed, detail=""):
        _CRITERIA.append((label, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")


def random_full_rank(rng, m, n, max_cond=1e4):
    while True:
        W = rng.standard_normal((m, n))
        if np.linalg.cond(W) < max_cond:
            return W
