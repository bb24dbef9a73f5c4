import pytest

from frobtrace.archive import get_curve
from frobtrace.curves import trace_sweep

CRITERIA: list[str] = []


@pytest.fixture
def report():
    """Record one pass/fail line per acceptance criterion."""
    def _report(number, passed, detail=""):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}".rstrip()
        CRITERIA.append(line)
        print(line)
        return passed
    return _report


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in CRITERIA:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def j1():
    return get_curve("J1")


@pytest.fixture(scope="session")
def j1_small(j1):
    return trace_sweep(j1, 1 << 14)
