import numpy as np
import pytest

from chebspec import kepler

_ACCEPTANCE = []


@pytest.fixture(scope="session")
def kepler_problem():
    return kepler()


@pytest.fixture
def rng():
    return np.random.default_rng(20231017)


@pytest.fixture
def criterion():
    """Record a named acceptance check; the verdict is printed in the summary."""

    def check(name, ok, detail=""):
        _ACCEPTANCE.append((name, bool(ok), detail))
        assert ok, f"{name}: {detail}"

    return check


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
