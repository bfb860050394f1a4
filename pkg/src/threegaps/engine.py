"""Gap structure of unions of affine images of multiples of an irrational.

A configuration holds d sequences; sequence i maps each multiplier m in
(m_start_i, m_end_i] to the point

    gamma_i(m) = (p_i / q) * frac(m * alpha) + k_i   (mod P)

where frac is a grid fractional part (grid step lambda = t*P*q, or the
infinite grid) and k_i is an exact u + v*alpha shift.  All points are
placed on the circle [0, P) and sorted; consecutive differences are the
gaps, with the wraparound gap P + first - last listed first.

The number of distinct gap lengths is bounded by 3c, where c is the sum
of |lcm(|p_i|) / p_i| over the sequences.  The bound is re-verified on
every run, and the classification machinery behind it (translation of
gap intervals by the common shift, with rigid intervals at the range
boundaries) can be replayed and checked interval by interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key

from .exact import (
    AlphaLinear,
    AlphaOracle,
    Rational,
    approx_with_error,
    as_rational,
    compare,
    reduce_mod,
)
from .gridfrac import FracVariant, Grid, frac_part


class ConfigError(ValueError):
    """A configuration failed validation."""


class InvariantViolation(RuntimeError):
    """A runtime mathematical check failed; indicates a bug, not bad input."""


class TheoremViolation(InvariantViolation):
    """More distinct gaps than the 3c bound allows."""

    def __init__(self, message: str, report: "GapReport"):
        super().__init__(message)
        self.report = report


class ExactnessViolation(InvariantViolation):
    """An exact structural identity (e.g. gap sum = modulus) failed."""


class ClassificationInconsistency(InvariantViolation):
    """Interval classification contradicted the translation accounting."""


@dataclass(frozen=True)
class SequenceSpec:
    """One sequence: slope_num/q times the fractional part, plus a shift.

    Multipliers run over the integer range (m_start, m_end].
    """

    slope_num: int
    shift: AlphaLinear
    m_start: int
    m_end: int


@dataclass(frozen=True)
class GapConfig:
    alpha: AlphaOracle
    slope_den: int
    sequences: tuple[SequenceSpec, ...]
    modulus: Fraction
    grid_multiplier: int | None  # grid step = multiplier * modulus * slope_den
    variant: FracVariant

    def __post_init__(self):
        object.__setattr__(self, "sequences", tuple(self.sequences))
        object.__setattr__(self, "modulus", as_rational(self.modulus))
        object.__setattr__(self, "variant", FracVariant(self.variant))
        if not isinstance(self.alpha, AlphaOracle):
            raise ConfigError("alpha must be an AlphaOracle")
        if not isinstance(self.slope_den, int) or self.slope_den < 1:
            raise ConfigError("q (slope denominator) must be a positive integer")
        if not self.sequences:
            raise ConfigError("at least one sequence is required")
        for idx, seq in enumerate(self.sequences):
            label = f"sequences[{idx}]"
            if not isinstance(seq.slope_num, int) or seq.slope_num == 0:
                raise ConfigError(f"{label}: zero slope (p must be a nonzero integer)")
            if not isinstance(seq.shift, AlphaLinear):
                raise ConfigError(f"{label}: shift must be an AlphaLinear")
            if not isinstance(seq.m_start, int) or not isinstance(seq.m_end, int):
                raise ConfigError(f"{label}: multiplier range bounds must be integers")
            if seq.m_start > seq.m_end:
                raise ConfigError(f"{label}: empty range (m_start > m_end)")
            if seq.m_start < 0:
                raise ConfigError(f"{label}: m_start must be >= 0")
        if self.modulus <= 0:
            raise ConfigError("modulus P must be positive")
        if self.grid_multiplier is not None:
            if not isinstance(self.grid_multiplier, int) or self.grid_multiplier < 1:
                raise ConfigError(
                    "grid step must be a positive integer multiple of Pq "
                    f"(lambda_multiplier={self.grid_multiplier!r})"
                )
        elif self.variant is not FracVariant.PRIME:
            raise ConfigError("the infinite grid requires the prime fractional part")
        if self.total_points < 1:
            raise ConfigError("no multipliers in any sequence (N_total = 0)")
        if self.alpha.sign() <= 0:
            raise ConfigError("alpha must be positive")

    @property
    def grid(self) -> Grid:
        if self.grid_multiplier is None:
            return Grid.infinite()
        return Grid.finite(self.grid_multiplier * self.modulus * self.slope_den)

    @property
    def total_points(self) -> int:
        return sum(seq.m_end - seq.m_start for seq in self.sequences)


@dataclass(frozen=True)
class LabeledPoint:
    """A circle point gamma_i(m) tagged with its origin (i, m); i is 1-based."""

    value: AlphaLinear
    seq_index: int
    multiplier: int


@dataclass(frozen=True)
class BoundData:
    """The quantities behind the distinct-gap bound.

    slope_lcm is the positive lcm of the |p_i|; cofactors[i] is
    slope_lcm / p_i (signed); shift_step is slope_lcm / q, the alpha
    coefficient of the common translation; bound = 3 * sum |cofactors|.
    """

    slope_lcm: int
    shift_step: Rational
    cofactors: tuple[int, ...]
    cofactor_sum: int
    bound: int


@dataclass(frozen=True)
class GapReport:
    config: GapConfig
    sorted_points: tuple[LabeledPoint, ...]
    gaps: tuple[AlphaLinear, ...]
    distinct_gaps: tuple[AlphaLinear, ...]  # first-appearance order
    bound_data: BoundData
    bound_satisfied: bool

    @property
    def distinct_count(self) -> int:
        return len(self.distinct_gaps)


def compute_bound_data(config: GapConfig) -> BoundData:
    ell = math.lcm(*(abs(seq.slope_num) for seq in config.sequences))
    cofactors = tuple(ell // seq.slope_num for seq in config.sequences)
    total = sum(abs(c) for c in cofactors)
    return BoundData(
        slope_lcm=ell,
        shift_step=Fraction(ell, config.slope_den),
        cofactors=cofactors,
        cofactor_sum=total,
        bound=3 * total,
    )


def generate_points(config: GapConfig) -> list[LabeledPoint]:
    """All gamma_i(m) reduced to [0, P), in (i, m) order."""
    oracle = config.alpha
    grid = config.grid
    points = []
    for i, seq in enumerate(config.sequences, start=1):
        slope = Fraction(seq.slope_num, config.slope_den)
        for m in range(seq.m_start + 1, seq.m_end + 1):
            fp = frac_part(AlphaLinear(Fraction(0), Fraction(m)), grid, config.variant, oracle)
            value = reduce_mod(fp * slope + seq.shift, config.modulus, oracle)
            points.append(LabeledPoint(value, i, m))
    return points


def _point_cmp(a: LabeledPoint, b: LabeledPoint, oracle: AlphaOracle) -> int:
    c = compare(a.value, b.value, oracle)
    if c != 0:
        return c
    ka, kb = (a.seq_index, a.multiplier), (b.seq_index, b.multiplier)
    return -1 if ka < kb else (1 if ka > kb else 0)


def sort_points(points: list[LabeledPoint], oracle: AlphaOracle) -> list[LabeledPoint]:
    """Sort by value with (seq_index, multiplier) tie-break, exactly.

    Float approximations with certified error bounds split the points
    into clusters whose separations are proven; only points inside a
    cluster are compared exactly.  The result is identical to a pure
    exact sort.
    """
    if len(points) <= 1:
        return list(points)
    decorated = [(*approx_with_error(p.value, oracle), p) for p in points]
    decorated.sort(key=lambda t: (t[0], t[2].seq_index, t[2].multiplier))
    key = cmp_to_key(lambda a, b: _point_cmp(a, b, oracle))
    out: list[LabeledPoint] = []
    cluster: list[LabeledPoint] = []
    seen_hi = -math.inf  # max upper interval bound over all points so far
    for approx, err, point in decorated:
        if cluster and approx - err > seen_hi:
            out.extend(cluster if len(cluster) == 1 else sorted(cluster, key=key))
            cluster = []
        cluster.append(point)
        seen_hi = max(seen_hi, approx + err)
    out.extend(cluster if len(cluster) == 1 else sorted(cluster, key=key))
    return out


def compute_gaps(
    sorted_points: list[LabeledPoint] | tuple[LabeledPoint, ...], modulus
) -> tuple[list[AlphaLinear], list[AlphaLinear]]:
    """Circle gaps of the sorted points: wraparound first, then diffs.

    Returns (gaps, distinct) with distinct in first-appearance order.
    The exact identity sum(gaps) == modulus is checked on every call.
    """
    modulus = as_rational(modulus)
    pts = list(sorted_points)
    if not pts:
        raise ValueError("cannot compute gaps of an empty point set")
    gaps = [AlphaLinear.rational(modulus) + pts[0].value - pts[-1].value]
    for prev, cur in zip(pts, pts[1:]):
        gaps.append(cur.value - prev.value)
    total = AlphaLinear.rational(0)
    for g in gaps:
        total = total + g
    if total != AlphaLinear.rational(modulus):
        raise ExactnessViolation(f"gap sum {total} differs from the modulus {modulus}")
    distinct: list[AlphaLinear] = []
    seen = set()
    for g in gaps:
        if g not in seen:
            seen.add(g)
            distinct.append(g)
    return gaps, distinct


def verify_bound(config: GapConfig) -> GapReport:
    """Run the full pipeline and verify the 3c distinct-gap bound."""
    bound_data = compute_bound_data(config)
    points = sort_points(generate_points(config), config.alpha)
    gaps, distinct = compute_gaps(points, config.modulus)
    ok = len(distinct) <= bound_data.bound
    report = GapReport(
        config=config,
        sorted_points=tuple(points),
        gaps=tuple(gaps),
        distinct_gaps=tuple(distinct),
        bound_data=bound_data,
        bound_satisfied=ok,
    )
    if not ok:
        raise TheoremViolation(
            f"{len(distinct)} distinct gaps exceed the bound {bound_data.bound}", report
        )
    return report


def translation_check(config: GapConfig) -> bool:
    """Check gamma_i(m + c_i) == gamma_i(m) + (lcm/q)*alpha mod P pointwise."""
    bound_data = compute_bound_data(config)
    points = generate_points(config)
    by_id = {(p.seq_index, p.multiplier): p for p in points}
    step = AlphaLinear(Fraction(0), bound_data.shift_step)
    for p in points:
        shifted = by_id.get((p.seq_index, p.multiplier + bound_data.cofactors[p.seq_index - 1]))
        if shifted is None:
            continue
        if reduce_mod(p.value + step, config.modulus, config.alpha) != shifted.value:
            return False
    return True


class IntervalKind(str, Enum):
    NON_RIGID = "non_rigid"
    RIGID_ENDPOINT = "rigid_endpoint"  # an endpoint's forward shift leaves its range
    RIGID_INTERNAL = "rigid_internal"  # a point lands strictly inside the translate


class WitnessSet(str, Enum):
    """Which boundary window certifies a rigid interval's witness point.

    start_high / start_low: the witness's forward shift m + c exits the
    multiplier range above (c > 0) or below (c < 0).  finish_low /
    finish_high: the witness's backward shift m - c exits below (c > 0)
    or above (c < 0), i.e. the point entered its range at that end.
    """

    START_HIGH = "start_high"
    START_LOW = "start_low"
    FINISH_LOW = "finish_low"
    FINISH_HIGH = "finish_high"


@dataclass(frozen=True)
class ClassifiedInterval:
    index: int  # aligned with GapReport.gaps
    left: LabeledPoint
    right: LabeledPoint
    length: AlphaLinear
    kind: IntervalKind
    witness: LabeledPoint | None = None
    witness_set: WitnessSet | None = None
    translate_to: int | None = None  # gap index of the translated interval


@dataclass(frozen=True)
class ClassificationReport:
    intervals: tuple[ClassifiedInterval, ...]
    rigid_count: int
    start_points: tuple[LabeledPoint, ...]
    finish_points: tuple[LabeledPoint, ...]
    orbit_lengths: tuple[int, ...]  # translation steps from each interval to a rigid one


def _boundary_windows(config: GapConfig, bound_data: BoundData, finish: bool):
    ids = []
    for i, (seq, c) in enumerate(zip(config.sequences, bound_data.cofactors), start=1):
        lo, hi = seq.m_start + 1, seq.m_end
        if finish:
            if c > 0:
                lo, hi = lo, min(hi, seq.m_start + c)
            else:
                lo, hi = max(lo, seq.m_end + c + 1), hi
        else:
            if c > 0:
                lo, hi = max(lo, seq.m_end - c + 1), hi
            else:
                lo, hi = lo, min(hi, seq.m_start - c)
        ids.extend((i, m) for m in range(lo, hi + 1))
    return ids


def classify_intervals(config: GapConfig, report: GapReport | None = None) -> ClassificationReport:
    """Classify every gap interval as rigid or translation-covered.

    Replays the accounting that proves the 3c bound: each interval is
    either translated (by shifting both endpoint multipliers by their
    cofactors) onto another gap interval of equal length, or it is rigid
    with a witness point in one of the boundary windows.  Inconsistencies
    raise ClassificationInconsistency; they indicate a bug, not bad input.
    """
    if report is None:
        report = verify_bound(config)
    bound_data = report.bound_data
    pts = report.sorted_points
    n = len(pts)
    oracle = config.alpha
    pos = {(p.seq_index, p.multiplier): i for i, p in enumerate(pts)}
    cof = bound_data.cofactors
    step = AlphaLinear(Fraction(0), bound_data.shift_step)

    def in_range(i: int, m: int) -> bool:
        seq = config.sequences[i - 1]
        return seq.m_start < m <= seq.m_end

    def shifted(p: LabeledPoint) -> tuple[int, int]:
        return (p.seq_index, p.multiplier + cof[p.seq_index - 1])

    intervals = []
    rigid = 0
    for g in range(n):
        left = pts[(g - 1) % n]
        right = pts[g]
        length = report.gaps[g]
        left_id, right_id = shifted(left), shifted(right)
        left_in, right_in = in_range(*left_id), in_range(*right_id)
        if not left_in or not right_in:
            witness = left if not left_in else right
            c = cof[witness.seq_index - 1]
            intervals.append(ClassifiedInterval(
                index=g, left=left, right=right, length=length,
                kind=IntervalKind.RIGID_ENDPOINT, witness=witness,
                witness_set=WitnessSet.START_HIGH if c > 0 else WitnessSet.START_LOW,
            ))
            rigid += 1
            continue
        left_pos, right_pos = pos[left_id], pos[right_id]
        expected = reduce_mod(left.value + step, config.modulus, oracle)
        if pts[left_pos].value != expected:
            raise ClassificationInconsistency(
                f"translation identity failed at {left_id}: "
                f"expected {expected}, found {pts[left_pos].value}"
            )
        if (left_pos + 1) % n == right_pos:
            intervals.append(ClassifiedInterval(
                index=g, left=left, right=right, length=length,
                kind=IntervalKind.NON_RIGID, translate_to=(left_pos + 1) % n,
            ))
            continue
        witness = pts[(left_pos + 1) % n]
        c = cof[witness.seq_index - 1]
        if in_range(witness.seq_index, witness.multiplier - c):
            raise ClassificationInconsistency(
                f"interior witness ({witness.seq_index}, {witness.multiplier}) of interval {g} "
                "has an in-range backward shift"
            )
        intervals.append(ClassifiedInterval(
            index=g, left=left, right=right, length=length,
            kind=IntervalKind.RIGID_INTERNAL, witness=witness,
            witness_set=WitnessSet.FINISH_LOW if c > 0 else WitnessSet.FINISH_HIGH,
        ))
        rigid += 1

    if rigid > bound_data.bound:
        raise ClassificationInconsistency(
            f"{rigid} rigid intervals exceed the bound {bound_data.bound}"
        )
    rigid_lengths = {iv.length for iv in intervals if iv.kind is not IntervalKind.NON_RIGID}
    if rigid_lengths != set(report.distinct_gaps):
        raise ClassificationInconsistency(
            "rigid interval lengths do not cover the distinct gap lengths"
        )
    orbit_lengths = verify_orbits(intervals)
    by_id = {(p.seq_index, p.multiplier): p for p in pts}
    return ClassificationReport(
        intervals=tuple(intervals),
        rigid_count=rigid,
        start_points=tuple(by_id[i] for i in _boundary_windows(config, bound_data, finish=False)),
        finish_points=tuple(by_id[i] for i in _boundary_windows(config, bound_data, finish=True)),
        orbit_lengths=orbit_lengths,
    )


def verify_orbits(intervals) -> tuple[int, ...]:
    """Steps from each interval to a rigid one along translations.

    Raises ClassificationInconsistency on a translation loop or a length
    change; termination at a rigid interval is what makes every gap
    length the length of some rigid interval.
    """
    n = len(intervals)
    steps: list[int | None] = [None] * n
    for start in range(n):
        if steps[start] is not None:
            continue
        path: list[int] = []
        on_path: set[int] = set()
        cur = start
        while steps[cur] is None and intervals[cur].translate_to is not None:
            if cur in on_path:
                raise ClassificationInconsistency(
                    f"translation loop through interval {cur}"
                )
            path.append(cur)
            on_path.add(cur)
            nxt = intervals[cur].translate_to
            if intervals[nxt].length != intervals[cur].length:
                raise ClassificationInconsistency(
                    f"translation changed the gap length at interval {cur}"
                )
            cur = nxt
        base = steps[cur] if steps[cur] is not None else 0
        for offset, idx in enumerate(reversed(path), start=1):
            steps[idx] = base + offset
        if steps[start] is None:  # start itself is rigid
            steps[start] = 0
    return tuple(s for s in steps)  # type: ignore[misc]
