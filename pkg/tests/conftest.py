from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from petrilab.curve import curve_new
from petrilab.fields import QQ, PrimeField

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def g3_q():
    """y^2 = x^7 + 1 over Q."""
    return curve_new(QQ, [1, 0, 0, 0, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def g2_f7():
    return curve_new(PrimeField(7), [1, 0, 0, 0, 0, 1])


@pytest.fixture(scope="session")
def g5_f23():
    """y^2 = x^11 + 1 over F_23."""
    return curve_new(PrimeField(23), [1] + [0] * 10 + [1])


def frac(s):
    return Fraction(s)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
