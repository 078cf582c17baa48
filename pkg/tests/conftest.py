import math

import pytest


def trial_division_factor(n):
    """Smallest prime factor of n >= 2 by naive trial division (independent oracle)."""
    for d in range(2, math.isqrt(n) + 1):
        if n % d == 0:
            return d
    return n


def naive_is_prime(n):
    return n >= 2 and trial_division_factor(n) == n


@pytest.fixture(scope="session")
def f4():
    from slmin.oracle.fq import make_field

    return make_field(2, 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(module, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
