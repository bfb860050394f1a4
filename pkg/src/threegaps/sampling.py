"""Deterministic random configurations for property and acceptance suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import AlphaLinear, AlphaOracle, NthRoot, Quadratic
from .engine import GapConfig, SequenceSpec
from .gridfrac import FracVariant

# Positive irrationals of both oracle families, spread over (0, 4).
ALPHA_POOL: tuple[AlphaOracle, ...] = (
    Quadratic(Fraction(1, 2), Fraction(1, 2), 5),   # golden ratio
    Quadratic(Fraction(0), Fraction(1), 2),
    Quadratic(Fraction(0), Fraction(1), 3),
    Quadratic(Fraction(1), Fraction(1), 7),
    Quadratic(Fraction(1, 3), Fraction(2, 7), 13),
    Quadratic(Fraction(2), Fraction(-1, 2), 11),    # 2 - sqrt(11)/2, still positive
    NthRoot(Fraction(15), 3),
    NthRoot(Fraction(2), 3),
    NthRoot(Fraction(7, 2), 5),
    NthRoot(Fraction(3), 4),
)

MODULUS_POOL: tuple[Fraction, ...] = (
    Fraction(1),
    Fraction(1, 2),
    Fraction(3),
    Fraction(7, 5),
)


def random_alpha(rng: random.Random) -> AlphaOracle:
    return rng.choice(ALPHA_POOL)


def random_shift(rng: random.Random) -> AlphaLinear:
    return AlphaLinear(
        Fraction(rng.randint(-8, 8), rng.randint(1, 5)),
        Fraction(rng.randint(-2, 2), rng.randint(1, 3)),
    )


def random_gap_config(
    rng: random.Random,
    max_sequences: int = 4,
    max_slope: int = 6,
    max_den: int = 4,
    max_end: int = 500,
    allow_infinite: bool = True,
) -> GapConfig:
    """A random valid configuration within the given size caps."""
    d = rng.randint(1, max_sequences)
    sequences = []
    for _ in range(d):
        slope = 0
        while slope == 0:
            slope = rng.randint(-max_slope, max_slope)
        m_end = rng.randint(1, max_end)
        m_start = rng.randint(0, m_end)
        sequences.append(SequenceSpec(slope, random_shift(rng), m_start, m_end))
    if all(seq.m_start == seq.m_end for seq in sequences):
        seq = sequences[0]
        sequences[0] = SequenceSpec(seq.slope_num, seq.shift, max(0, seq.m_end - 1), seq.m_end)
    if allow_infinite and rng.random() < 0.25:
        multiplier, variant = None, FracVariant.PRIME
    else:
        multiplier = rng.randint(1, 3)
        variant = rng.choice((FracVariant.PRIME, FracVariant.DOUBLE_PRIME))
    return GapConfig(
        alpha=random_alpha(rng),
        slope_den=rng.randint(1, max_den),
        sequences=tuple(sequences),
        modulus=rng.choice(MODULUS_POOL),
        grid_multiplier=multiplier,
        variant=variant,
    )
