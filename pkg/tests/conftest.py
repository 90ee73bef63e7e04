import pytest

from heightbounds import PolyRing
from heightbounds.poly import CoefficientField, MonomialOrder


@pytest.fixture
def Rxy():
    return PolyRing(["x", "y"])


@pytest.fixture
def Rxyz():
    return PolyRing(["x", "y", "z"])


@pytest.fixture
def F5xyz():
    return PolyRing(["x", "y", "z"], CoefficientField(5), MonomialOrder.grevlex())


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
