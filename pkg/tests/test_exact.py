"""Exact linear arithmetic over an irrational: enclosures, comparison, rounding."""

import random
from fractions import Fraction

import pytest

from threegaps.exact import (
    ALPHA,
    EQ,
    GT,
    LT,
    REFINEMENT_BITS_CAP,
    AlphaLinear,
    DecimalLiteral,
    NthRoot,
    PrecisionExhausted,
    Quadratic,
    alpha_enclosure,
    approx_with_error,
    approximate,
    as_rational,
    compare,
    decimal_places_string,
    decimal_string,
    floor_div,
    is_positive,
    reduce_mod,
)
from threegaps.sampling import ALPHA_POOL


def rat(n, d=1):
    return AlphaLinear.rational(Fraction(n, d))


class TestConstruction:
    def test_as_rational_rejects_floats(self):
        with pytest.raises(TypeError):
            as_rational(0.5)

    def test_alpha_linear_rejects_floats(self):
        with pytest.raises(TypeError):
            AlphaLinear(0.5, Fraction(1))

    def test_quadratic_rejects_square_radicand(self):
        with pytest.raises(ValueError, match="perfect square"):
            Quadratic(Fraction(0), Fraction(1), 9)

    def test_quadratic_rejects_zero_b(self):
        with pytest.raises(ValueError, match="b must be nonzero"):
            Quadratic(Fraction(1), Fraction(0), 2)

    def test_quadratic_rejects_nonpositive_radicand(self):
        with pytest.raises(ValueError):
            Quadratic(Fraction(0), Fraction(1), -2)

    def test_nthroot_rejects_exact_powers(self):
        with pytest.raises(ValueError, match="exact rational power"):
            NthRoot(Fraction(8), 3)
        with pytest.raises(ValueError, match="exact rational power"):
            NthRoot(Fraction(27, 8), 3)

    def test_nthroot_rejects_bad_degree(self):
        with pytest.raises(ValueError, match="degree"):
            NthRoot(Fraction(2), 1)

    def test_decimal_literal_rejects_garbage(self):
        with pytest.raises(ValueError, match="not a decimal literal"):
            DecimalLiteral("2.4x", 64)

    def test_arithmetic_is_componentwise(self):
        x = AlphaLinear(Fraction(1, 3), Fraction(-2, 7))
        y = AlphaLinear(Fraction(2, 3), Fraction(2, 7))
        assert x + y == AlphaLinear(Fraction(1), Fraction(0))
        assert x - y == AlphaLinear(Fraction(-1, 3), Fraction(-4, 7))
        assert -x == AlphaLinear(Fraction(-1, 3), Fraction(2, 7))
        assert x * Fraction(3) == AlphaLinear(Fraction(1), Fraction(-6, 7))


def sqrt_cmp(s: Fraction, r: int) -> int:
    """Sign of s - sqrt(r) using only rational arithmetic."""
    if s < 0:
        return -1
    return (s * s > r) - (s * s < r)


def enclosure_contains_value(oracle, lo: Fraction, hi: Fraction) -> bool:
    """Check lo < alpha < hi against the oracle's defining equation."""
    if isinstance(oracle, Quadratic):
        # alpha = a + b*sqrt(r); compare endpoints by isolating sqrt(r).
        if oracle.b > 0:
            return (sqrt_cmp((lo - oracle.a) / oracle.b, oracle.radicand) < 0
                    and sqrt_cmp((hi - oracle.a) / oracle.b, oracle.radicand) > 0)
        return (sqrt_cmp((lo - oracle.a) / oracle.b, oracle.radicand) > 0
                and sqrt_cmp((hi - oracle.a) / oracle.b, oracle.radicand) < 0)
    if isinstance(oracle, NthRoot):
        n = oracle.degree
        return ((lo < 0 or lo ** n < oracle.radicand)
                and hi > 0 and hi ** n > oracle.radicand)
    if isinstance(oracle, DecimalLiteral):
        v = Fraction(oracle.digits)
        return lo <= v <= hi
    raise AssertionError(f"unknown oracle {oracle!r}")


class TestEnclosures:
    @pytest.mark.parametrize("bits", [8, 64, 200])
    def test_width_and_containment_across_pool(self, bits):
        for oracle in ALPHA_POOL:
            lo, hi = alpha_enclosure(oracle, bits)
            assert hi - lo <= Fraction(1, 1 << bits)
            assert enclosure_contains_value(oracle, lo, hi)

    def test_nesting_holds_in_mixed_request_order(self, sqrt2):
        oracle = Quadratic(Fraction(0), Fraction(1), 2)
        e64 = oracle.enclosure(64)
        e256 = oracle.enclosure(256)
        e128 = oracle.enclosure(128)  # lower than the best already computed
        assert e64[0] <= e256[0] and e256[1] <= e64[1]
        assert e256[0] <= e128[0] and e128[1] <= e256[1]

    def test_decimal_literal_precision_cap(self):
        oracle = DecimalLiteral("2.466212074330470101", 128)
        lo, hi = oracle.enclosure(128)
        assert hi - lo <= Fraction(1, 1 << 128)
        with pytest.raises(PrecisionExhausted):
            oracle.enclosure(129)

    def test_bits_validation(self, sqrt2):
        with pytest.raises(ValueError):
            sqrt2.enclosure(0)
        with pytest.raises(PrecisionExhausted):
            sqrt2.enclosure(REFINEMENT_BITS_CAP + 1)

    def test_sign(self, sqrt2):
        assert sqrt2.sign() == GT
        assert Quadratic(Fraction(0), Fraction(-1), 2).sign() == LT

    def test_float_approx_is_certified(self):
        for oracle in ALPHA_POOL:
            approx, err = oracle.float_approx()
            lo, hi = oracle.enclosure(64)
            assert Fraction(approx) - Fraction(err) <= lo
            assert hi <= Fraction(approx) + Fraction(err)


class TestCompare:
    def test_golden_against_fibonacci_ratios(self, golden):
        # Convergents straddle the golden ratio: 987/610 below, 1597/987 above.
        assert compare(ALPHA, rat(987, 610), golden) == GT
        assert compare(ALPHA, rat(1597, 987), golden) == LT

    def test_sqrt2_decimal_straddle(self, sqrt2):
        assert compare(ALPHA, rat(141421356, 10 ** 8), sqrt2) == GT
        assert compare(ALPHA, rat(141421357, 10 ** 8), sqrt2) == LT

    def test_structural_equality_is_eq(self, golden):
        x = AlphaLinear(Fraction(2, 4), Fraction(-6, 4))
        y = AlphaLinear(Fraction(1, 2), Fraction(-3, 2))
        assert x == y
        assert compare(x, y, golden) == EQ

    def test_rational_fast_path(self, golden):
        assert compare(rat(1, 3), rat(2, 3), golden) == LT
        assert compare(rat(2, 3), rat(1, 3), golden) == GT

    def test_equality_pairs_never_misreported(self, cbrt15):
        rng = random.Random(20412)
        for _ in range(1000):
            u = Fraction(rng.randrange(-50, 51), rng.randrange(1, 20))
            v = Fraction(rng.randrange(-50, 51), rng.randrange(1, 20))
            scale = rng.randrange(1, 9)
            x = AlphaLinear(u, v)
            y = AlphaLinear(u * scale, v * scale) * Fraction(1, scale)
            assert compare(x, y, cbrt15) == EQ

    def test_trichotomy_antisymmetry_transitivity(self):
        rng = random.Random(977)
        for oracle in ALPHA_POOL[:4]:
            values = [
                AlphaLinear(
                    Fraction(rng.randrange(-30, 31), rng.randrange(1, 12)),
                    Fraction(rng.randrange(-30, 31), rng.randrange(1, 12)),
                )
                for _ in range(12)
            ]
            for a in values:
                for b in values:
                    c = compare(a, b, oracle)
                    assert c in (LT, EQ, GT)
                    assert c == -compare(b, a, oracle)
                    assert (c == EQ) == (a == b)
            # Transitivity via a sorted chain.
            import functools

            chain = sorted(values, key=functools.cmp_to_key(
                lambda p, q: compare(p, q, oracle)))
            for a, b in zip(chain, chain[1:]):
                assert compare(a, b, oracle) in (LT, EQ)

    def test_is_positive(self, golden):
        assert is_positive(AlphaLinear(Fraction(-1), Fraction(1)), golden)
        assert not is_positive(AlphaLinear(Fraction(1), Fraction(-1)), golden)


class TestFloorDivAndMod:
    def test_rational_cases(self, golden):
        assert floor_div(rat(27, 10), Fraction(1), golden) == 2
        assert floor_div(rat(-3, 10), Fraction(1), golden) == -1

    def test_irrational_case(self, sqrt2):
        assert floor_div(ALPHA, Fraction(1, 2), sqrt2) == 2

    def test_step_validation(self, golden):
        with pytest.raises(ValueError, match="positive"):
            floor_div(ALPHA, Fraction(0), golden)

    def test_floor_property(self):
        rng = random.Random(5150)
        for oracle in ALPHA_POOL[:5]:
            for _ in range(40):
                x = AlphaLinear(
                    Fraction(rng.randrange(-40, 41), rng.randrange(1, 10)),
                    Fraction(rng.randrange(-40, 41), rng.randrange(1, 10)),
                )
                s = Fraction(rng.randrange(1, 12), rng.randrange(1, 12))
                k = floor_div(x, s, oracle)
                assert compare(x, rat(k * s.numerator, s.denominator), oracle) != LT
                assert compare(x, rat((k + 1) * s.numerator, s.denominator), oracle) == LT

    def test_reduce_mod_golden_multiple(self, golden):
        # 2*alpha = 3.236..., so mod 1 it is 2*alpha - 3.
        assert reduce_mod(ALPHA * Fraction(2), 1, golden) == AlphaLinear(
            Fraction(-3), Fraction(2))

    def test_reduce_mod_idempotent_and_shift_invariant(self, cbrt15):
        rng = random.Random(31)
        for _ in range(25):
            x = AlphaLinear(
                Fraction(rng.randrange(-60, 61), rng.randrange(1, 9)),
                Fraction(rng.randrange(-60, 61), rng.randrange(1, 9)),
            )
            p = Fraction(rng.randrange(1, 8), rng.randrange(1, 4))
            r = reduce_mod(x, p, cbrt15)
            assert reduce_mod(r, p, cbrt15) == r
            shifted = x + rat(3 * p.numerator, p.denominator)
            assert reduce_mod(shifted, p, cbrt15) == r
            assert compare(r, AlphaLinear(Fraction(0)), cbrt15) != LT
            assert compare(r, rat(p.numerator, p.denominator), cbrt15) == LT


class TestApproximation:
    def test_approximate_within_tolerance(self):
        rng = random.Random(8122)
        for oracle in ALPHA_POOL:
            x = AlphaLinear(
                Fraction(rng.randrange(-20, 21), rng.randrange(1, 9)),
                Fraction(rng.randrange(-20, 21) or 1, rng.randrange(1, 9)),
            )
            tol = Fraction(1, 10) ** 40
            r = approximate(x, oracle, tol)
            assert compare(x, AlphaLinear.rational(r - tol), oracle) != LT
            assert compare(x, AlphaLinear.rational(r + tol), oracle) != GT

    def test_approximate_rejects_bad_tolerance(self, golden):
        with pytest.raises(ValueError):
            approximate(ALPHA, golden, Fraction(0))

    def test_approx_with_error_is_sound(self):
        rng = random.Random(640)
        for oracle in ALPHA_POOL:
            for _ in range(60):
                x = AlphaLinear(
                    Fraction(rng.randrange(-10 ** 6, 10 ** 6), rng.randrange(1, 999)),
                    Fraction(rng.randrange(-10 ** 6, 10 ** 6), rng.randrange(1, 999)),
                )
                approx, err = approx_with_error(x, oracle)
                lo = AlphaLinear.rational(Fraction(approx) - Fraction(err))
                hi = AlphaLinear.rational(Fraction(approx) + Fraction(err))
                assert compare(x, lo, oracle) != LT
                assert compare(x, hi, oracle) != GT


class TestDecimalRendering:
    def test_golden_thirty_significant_digits(self, golden):
        assert decimal_string(ALPHA, golden) == "1.61803398874989484820458683437"

    def test_rational_shortcut(self, golden):
        assert decimal_string(rat(1, 4), golden, 20) == "0.25"
        assert decimal_string(AlphaLinear(Fraction(0)), golden) == "0"

    def test_nine_places_cube_root(self, cbrt15):
        assert decimal_places_string(ALPHA, cbrt15, 9) == "2.466212074"

    def test_nine_places_rounds_half_up(self, golden):
        assert decimal_places_string(rat(25, 1000), golden, 2) == "0.03"
        assert decimal_places_string(rat(-25, 1000), golden, 2) == "-0.03"

    def test_significant_digits_validation(self, golden):
        with pytest.raises(ValueError):
            decimal_string(ALPHA, golden, 0)
