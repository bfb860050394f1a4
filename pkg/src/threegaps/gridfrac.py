"""Rounding to a rational grid and the fractional parts it induces.

A finite grid is the set of integer multiples of a positive rational step.
Rounding x down (or up) to the grid gives a floor (roof).  Two fractional
parts are used: the double-prime variant always subtracts the floor and
lands in [0, step); the prime variant subtracts the roof when x < 0, so
the result keeps the sign of x.  The two agree for x >= 0.  The infinite
grid is the identity map (no rounding), defined for the prime variant
only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .exact import GT, ZERO, AlphaLinear, AlphaOracle, as_rational, compare, floor_div


class FracVariant(str, Enum):
    # "prime": identity on the infinite grid, roof-based below zero.
    PRIME = "prime"
    # "double_prime": always floor-based, value in [0, step); finite grids only.
    DOUBLE_PRIME = "double_prime"


@dataclass(frozen=True)
class Grid:
    """Integer multiples of a positive rational step; step=None means infinite."""

    step: Fraction | None

    @classmethod
    def finite(cls, step) -> "Grid":
        step = as_rational(step)
        if step <= 0:
            raise ValueError("grid step must be positive")
        return cls(step)

    @classmethod
    def infinite(cls) -> "Grid":
        return cls(None)

    @property
    def is_finite(self) -> bool:
        return self.step is not None

    def contains(self, x: AlphaLinear) -> bool:
        """Grid membership is structural: rational and an exact multiple."""
        if not self.is_finite:
            return True
        return x.v == 0 and (x.u / self.step).denominator == 1


def grid_floor(x: AlphaLinear, step, oracle: AlphaOracle) -> Fraction:
    """Largest grid element <= x."""
    step = as_rational(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    return step * floor_div(x, step, oracle)


def grid_roof(x: AlphaLinear, step, oracle: AlphaOracle) -> Fraction:
    """Smallest grid element >= x."""
    step = as_rational(step)
    if step <= 0:
        raise ValueError("grid step must be positive")
    if x.v == 0 and (x.u / step).denominator == 1:
        return x.u
    return step * (floor_div(x, step, oracle) + 1)


def frac_part(x: AlphaLinear, grid: Grid, variant: FracVariant, oracle: AlphaOracle) -> AlphaLinear:
    """x minus its grid rounding, per the chosen variant.

    Double-prime subtracts the floor unconditionally, landing in
    [0, step).  Prime subtracts the roof for x < 0 (so the result has the
    sign of x) and is the identity on the infinite grid.
    """
    variant = FracVariant(variant)
    if not grid.is_finite:
        if variant is not FracVariant.PRIME:
            raise ValueError("only the prime variant is defined on the infinite grid")
        return x
    if variant is FracVariant.DOUBLE_PRIME:
        return x - AlphaLinear.rational(grid_floor(x, grid.step, oracle))
    if _sign(x, oracle) >= 0:
        return x - AlphaLinear.rational(grid_floor(x, grid.step, oracle))
    return x - AlphaLinear.rational(grid_roof(x, grid.step, oracle))


def _sign(x: AlphaLinear, oracle: AlphaOracle) -> int:
    if x.v == 0:
        return (x.u > 0) - (x.u < 0)
    return compare(x, ZERO, oracle)
