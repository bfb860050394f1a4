"""Shared fixtures: the irrational constants used throughout the suite."""

from fractions import Fraction

import pytest

from threegaps.exact import LT, AlphaLinear, NthRoot, Quadratic, compare


@pytest.fixture(scope="session")
def golden():
    """The golden ratio (1 + sqrt 5) / 2."""
    return Quadratic(Fraction(1, 2), Fraction(1, 2), 5)


@pytest.fixture(scope="session")
def sqrt2():
    return Quadratic(Fraction(0), Fraction(1), 2)


@pytest.fixture(scope="session")
def cbrt15():
    return NthRoot(Fraction(15), 3)


def assert_ascending(values: list[AlphaLinear], oracle) -> None:
    """Fail unless values are strictly increasing under exact comparison."""
    for a, b in zip(values, values[1:]):
        assert compare(a, b, oracle) == LT, f"not ascending: {a} !< {b}"
