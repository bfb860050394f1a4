"""Core engine: point generation, exact sorting, gaps, the 3c bound,
and the rigid-interval accounting behind it."""

import random
from fractions import Fraction

import pytest

from threegaps.engine import (
    ClassificationInconsistency,
    ConfigError,
    GapConfig,
    IntervalKind,
    SequenceSpec,
    WitnessSet,
    classify_intervals,
    compute_bound_data,
    compute_gaps,
    generate_points,
    sort_points,
    translation_check,
    verify_bound,
)
from threegaps.exact import ALPHA, AlphaLinear, Quadratic, compare
from threegaps.gridfrac import FracVariant
from threegaps.sampling import random_gap_config

from conftest import assert_ascending


def rat(n, d=1):
    return AlphaLinear.rational(Fraction(n, d))


def simple_config(alpha, count, *, p=1, q=1, shift=None, modulus=Fraction(1),
                  multiplier=1, variant=FracVariant.DOUBLE_PRIME):
    seqs = (SequenceSpec(p, shift or rat(0), 0, count),)
    return GapConfig(alpha, q, seqs, modulus, multiplier, variant)


class TestConfigValidation:
    def test_zero_slope(self, golden):
        with pytest.raises(ConfigError, match="zero slope"):
            simple_config(golden, 3, p=0)

    def test_bad_grid_multiplier(self, golden):
        with pytest.raises(ConfigError, match="positive integer multiple of Pq"):
            simple_config(golden, 3, multiplier=0)

    def test_infinite_grid_needs_prime(self, golden):
        with pytest.raises(ConfigError, match="prime fractional part"):
            simple_config(golden, 3, multiplier=None)

    def test_empty_total_range(self, golden):
        with pytest.raises(ConfigError, match="N_total = 0"):
            simple_config(golden, 0)

    def test_reversed_range(self, golden):
        with pytest.raises(ConfigError, match="empty range"):
            GapConfig(golden, 1, (SequenceSpec(1, rat(0), 5, 2),),
                      Fraction(1), 1, FracVariant.DOUBLE_PRIME)

    def test_negative_modulus(self, golden):
        with pytest.raises(ConfigError, match="P must be positive"):
            simple_config(golden, 3, modulus=Fraction(-1))

    def test_negative_alpha(self):
        negative = Quadratic(Fraction(0), Fraction(-1), 2)
        with pytest.raises(ConfigError, match="alpha must be positive"):
            simple_config(negative, 3)

    def test_grid_step_combines_modulus_and_denominator(self, golden):
        cfg = simple_config(golden, 3, q=3, modulus=Fraction(7, 5), multiplier=2)
        assert cfg.grid.step == Fraction(42, 5)

    def test_total_points(self, golden):
        cfg = GapConfig(
            golden, 1,
            (SequenceSpec(1, rat(0), 0, 4), SequenceSpec(-1, rat(1), 2, 7)),
            Fraction(1), 1, FracVariant.DOUBLE_PRIME)
        assert cfg.total_points == 9


class TestBoundData:
    def test_doubled_circle_cofactors(self, golden):
        cfg = GapConfig(
            golden, 1,
            (SequenceSpec(1, rat(0), 0, 5), SequenceSpec(-1, rat(1), 0, 5)),
            Fraction(1), 1, FracVariant.DOUBLE_PRIME)
        data = compute_bound_data(cfg)
        assert data.slope_lcm == 1
        assert data.cofactors == (1, -1)
        assert data.cofactor_sum == 2
        assert data.bound == 6
        assert data.shift_step == Fraction(1)

    def test_mixed_slopes(self, golden):
        cfg = GapConfig(
            golden, 2,
            (SequenceSpec(2, rat(0), 0, 5), SequenceSpec(-3, rat(1), 0, 5)),
            Fraction(1), 1, FracVariant.DOUBLE_PRIME)
        data = compute_bound_data(cfg)
        assert data.slope_lcm == 6
        assert data.cofactors == (3, -2)
        assert data.cofactor_sum == 5
        assert data.bound == 15
        assert data.shift_step == Fraction(3)

    def test_single_sequence(self, golden):
        assert compute_bound_data(simple_config(golden, 5)).bound == 3


class TestPointGeneration:
    def test_shifted_sequence_value(self, sqrt2):
        # p=q=1, k=3/4, P=1: the first point is {alpha} + 3/4 mod 1,
        # which is alpha - 5/4 since sqrt(2) + (-1/4) lands above 1.
        cfg = simple_config(sqrt2, 1, shift=rat(3, 4))
        (pt,) = generate_points(cfg)
        assert pt.value == AlphaLinear(Fraction(-5, 4), Fraction(1))
        assert (pt.seq_index, pt.multiplier) == (1, 1)

    def test_multiplier_range_is_open_left(self, golden):
        cfg = GapConfig(golden, 1, (SequenceSpec(1, rat(0), 2, 5),),
                        Fraction(1), 1, FracVariant.DOUBLE_PRIME)
        assert [p.multiplier for p in generate_points(cfg)] == [3, 4, 5]

    def test_classical_golden_five_sorted_order(self, golden):
        cfg = simple_config(golden, 5)
        pts = sort_points(generate_points(cfg), golden)
        assert [p.multiplier for p in pts] == [5, 2, 4, 1, 3]
        assert_ascending([p.value for p in pts], golden)


class TestGaps:
    def test_classical_golden_five_gap_sequence(self, golden):
        rep = verify_bound(simple_config(golden, 5))
        assert rep.gaps == (
            AlphaLinear(Fraction(-3), Fraction(2)),
            AlphaLinear(Fraction(5), Fraction(-3)),
            AlphaLinear(Fraction(-3), Fraction(2)),
            AlphaLinear(Fraction(5), Fraction(-3)),
            AlphaLinear(Fraction(-3), Fraction(2)),
        )
        assert rep.distinct_gaps == (
            AlphaLinear(Fraction(-3), Fraction(2)),
            AlphaLinear(Fraction(5), Fraction(-3)),
        )
        assert rep.distinct_count == 2
        assert rep.bound_data.bound == 3
        assert rep.bound_satisfied

    def test_single_point_gap_is_the_modulus(self, golden):
        rep = verify_bound(simple_config(golden, 1, modulus=Fraction(7, 5)))
        assert rep.gaps == (rat(7, 5),)
        assert rep.distinct_gaps == (rat(7, 5),)

    def test_gap_sum_is_the_modulus(self, cbrt15):
        rep = verify_bound(simple_config(cbrt15, 40, modulus=Fraction(3)))
        total = rat(0)
        for g in rep.gaps:
            total = total + g
        assert total == rat(3)

    def test_coincident_points_yield_a_zero_gap(self, golden):
        seqs = (SequenceSpec(1, rat(0), 0, 4), SequenceSpec(1, rat(0), 0, 4))
        cfg = GapConfig(golden, 1, seqs, Fraction(1), 1, FracVariant.DOUBLE_PRIME)
        rep = verify_bound(cfg)
        assert rat(0) in rep.distinct_gaps
        assert rep.distinct_count <= rep.bound_data.bound
        cls = classify_intervals(cfg, rep)
        assert cls.rigid_count <= rep.bound_data.bound

    def test_compute_gaps_rejects_empty(self):
        with pytest.raises(ValueError):
            compute_gaps([], Fraction(1))

    def test_determinism(self, sqrt2):
        cfg = simple_config(sqrt2, 30, modulus=Fraction(1, 2))
        assert verify_bound(cfg) == verify_bound(cfg)


class TestTranslation:
    def test_translation_identity_holds(self, golden, sqrt2, cbrt15):
        for alpha in (golden, sqrt2, cbrt15):
            cfg = GapConfig(
                alpha, 2,
                (SequenceSpec(2, rat(1, 3), 0, 30), SequenceSpec(-3, ALPHA, 0, 20)),
                Fraction(1), 1, FracVariant.DOUBLE_PRIME)
            assert translation_check(cfg)


class TestClassification:
    def test_doubled_circle_two_multiples(self, golden):
        seqs = (SequenceSpec(1, rat(0), 0, 2), SequenceSpec(-1, rat(1), 0, 2))
        cfg = GapConfig(golden, 1, seqs, Fraction(1), 1, FracVariant.DOUBLE_PRIME)
        rep = verify_bound(cfg)
        assert [(p.seq_index, p.multiplier) for p in rep.sorted_points] == [
            (1, 2), (2, 1), (1, 1), (2, 2)]
        cls = classify_intervals(cfg, rep)
        assert [iv.kind for iv in cls.intervals] == [
            IntervalKind.RIGID_ENDPOINT,
            IntervalKind.RIGID_ENDPOINT,
            IntervalKind.RIGID_ENDPOINT,
            IntervalKind.NON_RIGID,
        ]
        assert cls.rigid_count == 3
        assert cls.orbit_lengths == (0, 0, 0, 1)
        assert cls.intervals[1].witness_set is WitnessSet.START_HIGH
        assert cls.intervals[2].witness_set is WitnessSet.START_LOW
        assert cls.intervals[3].translate_to == 1
        assert [(p.seq_index, p.multiplier) for p in cls.start_points] == [(1, 2), (2, 1)]
        assert [(p.seq_index, p.multiplier) for p in cls.finish_points] == [(1, 1), (2, 2)]

    def test_rigid_lengths_cover_distinct_gaps(self, cbrt15):
        seqs = (SequenceSpec(2, rat(1, 7), 0, 40), SequenceSpec(-3, rat(0), 5, 45))
        cfg = GapConfig(cbrt15, 3, seqs, Fraction(7, 5), 2, FracVariant.PRIME)
        rep = verify_bound(cfg)
        cls = classify_intervals(cfg, rep)
        rigid_lengths = {iv.length for iv in cls.intervals
                         if iv.kind is not IntervalKind.NON_RIGID}
        assert rigid_lengths == set(rep.distinct_gaps)
        assert cls.rigid_count <= rep.bound_data.bound

    def test_non_rigid_translates_preserve_length(self, sqrt2):
        cfg = simple_config(sqrt2, 60)
        cls = classify_intervals(cfg)
        for iv in cls.intervals:
            if iv.kind is IntervalKind.NON_RIGID:
                assert cls.intervals[iv.translate_to].length == iv.length

    def test_orbits_terminate_within_point_count(self, golden):
        seqs = (SequenceSpec(1, rat(0), 0, 50), SequenceSpec(-1, rat(1), 0, 50))
        cfg = GapConfig(golden, 1, seqs, Fraction(1), 1, FracVariant.DOUBLE_PRIME)
        cls = classify_intervals(cfg)
        n = len(cls.intervals)
        assert all(0 <= k < n for k in cls.orbit_lengths)
        for iv, k in zip(cls.intervals, cls.orbit_lengths):
            assert (k == 0) == (iv.kind is not IntervalKind.NON_RIGID)


class TestRandomizedProperties:
    def test_engine_invariants_over_sampled_configs(self):
        rng = random.Random(60622)
        for _ in range(30):
            cfg = random_gap_config(rng, max_end=120)
            rep = verify_bound(cfg)
            oracle = cfg.alpha
            values = [p.value for p in rep.sorted_points]
            for a, b in zip(values, values[1:]):
                assert compare(a, b, oracle) <= 0
            for g in rep.gaps:
                assert compare(g, rat(0), oracle) >= 0
            assert set(rep.distinct_gaps) == set(rep.gaps)
            assert rep.distinct_count <= rep.bound_data.bound
            assert translation_check(cfg)
            cls = classify_intervals(cfg, rep)
            assert cls.rigid_count <= rep.bound_data.bound
