import pytest

from wristsmc.beam import BeamSection
from wristsmc.scenario import Scenario, default_section

_CRITERIA = []


@pytest.fixture
def section():
    return default_section()


@pytest.fixture
def small_section():
    return BeamSection(E=1e6, I=1e-9, K=0.9, A=1e-4, G=4e5, L=0.12, rho=1000.0)


@pytest.fixture
def scenario():
    return Scenario.default()


@pytest.fixture
def criterion():
    """Record a pass/fail line for the acceptance summary."""

    def record(number, name, passed, detail=""):
        _CRITERIA.append((number, name, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number, name, passed, detail in sorted(_CRITERIA, key=lambda c: c[0]):
        status = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"[{status}] {number:>4}  {name}: {detail}")
