import pytest

from hshift.constants import default_constants
from hshift.hyperfine import eigensystem
from hshift.kinetics import KineticsParams
from hshift.shift import ShiftParams

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def consts():
    return default_constants()


@pytest.fixture(scope="session")
def spec46(consts):
    return eigensystem(consts, 4.6)


@pytest.fixture
def kin():
    return KineticsParams()


@pytest.fixture
def shp():
    return ShiftParams()


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number, title, passed, detail):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number:>2}: {title} -- {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
