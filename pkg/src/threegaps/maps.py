"""Derived gap problems: the classical single sequence, distances to the
nearest integer, piecewise-linear images, and the cube-root-of-15 search.

Each of these is phrased as (or checked against) a configuration of the
core engine, so the 3c bound machinery does the heavy lifting and the
specialized claims (3 gaps classically, 6 for nearest-integer distances,
a piecewise-linear constant k_f) are verified on every run.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key

from .exact import (
    GT,
    LT,
    ZERO,
    AlphaLinear,
    AlphaOracle,
    NthRoot,
    approx_with_error,
    as_rational,
    compare,
    decimal_places_string,
    reduce_mod,
)
from .engine import (
    ConfigError,
    ExactnessViolation,
    GapConfig,
    GapReport,
    LabeledPoint,
    SequenceSpec,
    TheoremViolation,
    compute_gaps,
    sort_points,
    verify_bound,
)
from .gridfrac import FracVariant, Grid, frac_part


def classical_config(alpha: AlphaOracle, count: int) -> GapConfig:
    """Fractional parts of alpha, 2*alpha, ..., count*alpha on [0, 1)."""
    if not isinstance(count, int) or count < 1:
        raise ConfigError("count must be a positive integer")
    return GapConfig(
        alpha=alpha,
        slope_den=1,
        sequences=(SequenceSpec(slope_num=1, shift=ZERO, m_start=0, m_end=count),),
        modulus=Fraction(1),
        grid_multiplier=1,
        variant=FracVariant.DOUBLE_PRIME,
    )


def classical_three_gap(alpha: AlphaOracle, count: int) -> GapReport:
    """Run the classical case; at most 3 distinct gaps, verified."""
    return verify_bound(classical_config(alpha, count))


def nearest_int(x: AlphaLinear, oracle: AlphaOracle) -> AlphaLinear:
    """Distance from x to the nearest integer, in [0, 1/2]."""
    if compare(x, ZERO, oracle) == LT:
        x = -x
    frac = frac_part(x, Grid.finite(1), FracVariant.DOUBLE_PRIME, oracle)
    complement = AlphaLinear.rational(1) - frac
    return frac if compare(frac, complement, oracle) != GT else complement


def doubled_circle_config(alpha: AlphaOracle, count: int) -> GapConfig:
    """The two-sequence circle configuration behind nearest-integer gaps.

    Sequence 1 carries the fractional parts of m*alpha, sequence 2 their
    reflections 1 - frac(m*alpha); the points below 1/2 are exactly the
    nearest-integer distances.
    """
    if not isinstance(count, int) or count < 2:
        raise ConfigError("count must be an integer >= 2")
    return GapConfig(
        alpha=alpha,
        slope_den=1,
        sequences=(
            SequenceSpec(slope_num=1, shift=ZERO, m_start=0, m_end=count),
            SequenceSpec(slope_num=-1, shift=AlphaLinear.rational(1), m_start=0, m_end=count),
        ),
        modulus=Fraction(1),
        grid_multiplier=1,
        variant=FracVariant.DOUBLE_PRIME,
    )


@dataclass(frozen=True)
class NearestIntReport:
    """Sorted nearest-integer distances of the first `count` multiples.

    values holds the distances ascending (as points of the doubled
    circle, so the labels tell which branch each came from); gaps are the
    count-1 consecutive differences, no wraparound.  circle_report is the
    verified engine run on the doubled configuration.
    """

    count: int
    points: tuple[LabeledPoint, ...]
    gaps: tuple[AlphaLinear, ...]
    distinct_gaps: tuple[AlphaLinear, ...]
    circle_report: GapReport

    @property
    def values(self) -> tuple[AlphaLinear, ...]:
        return tuple(p.value for p in self.points)

    @property
    def distinct_count(self) -> int:
        return len(self.distinct_gaps)


def nearest_int_gaps(alpha: AlphaOracle, count: int) -> NearestIntReport:
    """Gaps between sorted distances of m*alpha to the nearest integer.

    Computed twice: directly from the distances, and as the lower half of
    the doubled circle configuration.  The two paths must agree exactly,
    the upper half must sit strictly inside (1/2, 1), and the distinct
    gap count must respect the specialized bound of 6.
    """
    report = verify_bound(doubled_circle_config(alpha, count))
    half = AlphaLinear.rational(Fraction(1, 2))
    lower: list[LabeledPoint] = []
    seen_upper = False
    for p in report.sorted_points:
        c = compare(p.value, half, alpha)
        if c == 0:
            raise ExactnessViolation("a doubled-circle point landed exactly on 1/2")
        if c == LT:
            if seen_upper:
                raise ExactnessViolation("points below 1/2 are not a prefix of the circle order")
            lower.append(p)
        else:
            seen_upper = True
    if len(lower) != count or len(report.sorted_points) != 2 * count:
        raise ExactnessViolation(
            f"expected {count} of {2 * count} points below 1/2, found {len(lower)}"
        )

    direct = [LabeledPoint(nearest_int(AlphaLinear(Fraction(0), Fraction(m)), alpha), 1, m)
              for m in range(1, count + 1)]
    direct_sorted = sort_points(direct, alpha)
    if [p.value for p in direct_sorted] != [p.value for p in lower]:
        raise ExactnessViolation("direct distances disagree with the doubled-circle restriction")

    gaps = [b.value - a.value for a, b in zip(lower, lower[1:])]
    distinct: list[AlphaLinear] = []
    seen = set()
    for g in gaps:
        if g not in seen:
            seen.add(g)
            distinct.append(g)
    if len(distinct) > 6:
        raise TheoremViolation(
            f"{len(distinct)} distinct nearest-integer gaps exceed the bound 6", report
        )
    return NearestIntReport(
        count=count,
        points=tuple(lower),
        gaps=tuple(gaps),
        distinct_gaps=tuple(distinct),
        circle_report=report,
    )


class ZeroSlopePiece(ConfigError):
    """A piecewise-linear operation that needs nonzero slopes hit slope 0."""


class BreakpointHit(ConfigError):
    """Some multiple of alpha falls exactly on a breakpoint.

    Impossible for an irrational alpha and rational breakpoints; kept as
    a guard for oracle misuse.
    """


@dataclass(frozen=True)
class PWLPiece:
    slope_num: int
    shift: AlphaLinear


@dataclass(frozen=True)
class PWLFunction:
    """A continuous piecewise-linear map with rational breakpoints.

    Piece j applies on (breakpoints[j-1], breakpoints[j]]; slopes are
    slope_num/slope_den and intercepts are exact u + v*alpha values.
    """

    slope_den: int
    breakpoints: tuple[Fraction, ...]
    pieces: tuple[PWLPiece, ...]

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(as_rational(b) for b in self.breakpoints))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if not isinstance(self.slope_den, int) or self.slope_den < 1:
            raise ConfigError("q (slope denominator) must be a positive integer")
        if len(self.pieces) != len(self.breakpoints) + 1:
            raise ConfigError(
                f"{len(self.breakpoints)} breakpoints require "
                f"{len(self.breakpoints) + 1} pieces, got {len(self.pieces)}"
            )
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if a >= b:
                raise ConfigError("breakpoints must be strictly increasing")
        for j, b in enumerate(self.breakpoints):
            left, right = self.pieces[j], self.pieces[j + 1]
            lval = left.shift + AlphaLinear.rational(Fraction(left.slope_num, self.slope_den) * b)
            rval = right.shift + AlphaLinear.rational(Fraction(right.slope_num, self.slope_den) * b)
            if lval != rval:
                raise ConfigError(f"discontinuity at breakpoint {b}")
            if left.slope_num == right.slope_num:
                raise ConfigError(f"breakpoint {b} does not change the map (redundant)")

    @property
    def has_zero_slope(self) -> bool:
        return any(p.slope_num == 0 for p in self.pieces)

    def piece_index_right_of(self, x: Fraction) -> int:
        """Index of the piece applying just right of the rational x."""
        return sum(1 for b in self.breakpoints if b <= x)

    def bound_constant(self) -> int:
        """The distinct-gap constant: 3 * sum over pieces of |lcm / p_j|.

        Independent of the multiplier count; requires all slopes nonzero.
        """
        if self.has_zero_slope:
            raise ZeroSlopePiece("the distinct-gap constant needs all slopes nonzero")
        ell = math.lcm(*(abs(p.slope_num) for p in self.pieces))
        return 3 * sum(ell // abs(p.slope_num) for p in self.pieces)


def _multiples_up_to(bound_point: AlphaLinear, count: int, oracle: AlphaOracle) -> int:
    # Largest m in [0, count] with m*alpha <= bound_point.
    lo, hi = 0, count
    while lo < hi:
        mid = (lo + hi + 1) // 2
        c = compare(AlphaLinear(Fraction(0), Fraction(mid)), bound_point, oracle)
        if c == 0 and mid > 0:
            raise BreakpointHit(f"{mid}*alpha falls exactly on a breakpoint")
        if c <= 0:
            lo = mid
        else:
            hi = mid - 1
    return lo


def pwl_decompose(
    f: PWLFunction, alpha: AlphaOracle, count: int, allow_zero_slope: bool = False
) -> list[SequenceSpec]:
    """Split the multiples 1..count of alpha among the pieces of f.

    Returns one SequenceSpec per populated part of (0, count*alpha], with
    multiplier ranges found by exact binary search.  A populated part
    with slope 0 raises ZeroSlopePiece unless explicitly allowed.
    """
    if not isinstance(count, int) or count < 1:
        raise ConfigError("count must be a positive integer")
    upper = AlphaLinear(Fraction(0), Fraction(count))
    inner = [b for b in f.breakpoints
             if b > 0 and compare(AlphaLinear.rational(b), upper, alpha) == LT]
    sequences: list[SequenceSpec] = []
    m_lo = 0
    boundaries = [Fraction(0), *inner]
    for idx, left_edge in enumerate(boundaries):
        if idx + 1 < len(boundaries):
            m_hi = _multiples_up_to(AlphaLinear.rational(boundaries[idx + 1]), count, alpha)
        else:
            m_hi = count
        if m_hi > m_lo:
            piece = f.pieces[f.piece_index_right_of(left_edge)]
            if piece.slope_num == 0 and not allow_zero_slope:
                raise ZeroSlopePiece(f"populated part right of {left_edge} has slope 0")
            sequences.append(SequenceSpec(
                slope_num=piece.slope_num, shift=piece.shift, m_start=m_lo, m_end=m_hi,
            ))
        m_lo = m_hi
    if sum(s.m_end - s.m_start for s in sequences) != count:
        raise ExactnessViolation("piecewise decomposition lost multipliers")
    return sequences


@dataclass(frozen=True)
class PWLGapReport:
    report: GapReport
    bound_constant: int  # the count-independent distinct-gap bound k_f


def pwl_gaps(f: PWLFunction, alpha: AlphaOracle, count: int, modulus) -> PWLGapReport:
    """Gaps of f(alpha), f(2*alpha), ..., f(count*alpha) mod modulus.

    The decomposition into pieces becomes an engine configuration on the
    infinite grid; both the run's 3c bound and the count-independent
    constant of f are verified.
    """
    k_f = f.bound_constant()  # raises ZeroSlopePiece up front
    sequences = pwl_decompose(f, alpha, count)
    config = GapConfig(
        alpha=alpha,
        slope_den=f.slope_den,
        sequences=tuple(sequences),
        modulus=as_rational(modulus),
        grid_multiplier=None,
        variant=FracVariant.PRIME,
    )
    report = verify_bound(config)
    if report.distinct_count > k_f:
        raise TheoremViolation(
            f"{report.distinct_count} distinct gaps exceed the map constant {k_f}", report
        )
    return PWLGapReport(report=report, bound_constant=k_f)


@dataclass(frozen=True)
class EmpiricalPWLReport:
    """Observed gap structure of a piecewise-linear image; no bound claims."""

    points: tuple[LabeledPoint, ...]
    gaps: tuple[AlphaLinear, ...]
    distinct_gaps: tuple[AlphaLinear, ...]


def pwl_empirical_gaps(
    f: PWLFunction, alpha: AlphaOracle, count: int, modulus
) -> EmpiricalPWLReport:
    """Direct evaluation of the map on each multiple; zero slopes allowed."""
    modulus = as_rational(modulus)
    if modulus <= 0:
        raise ConfigError("modulus P must be positive")
    parts = pwl_decompose(f, alpha, count, allow_zero_slope=True)
    points = []
    for part_idx, part in enumerate(parts, start=1):
        slope = Fraction(part.slope_num, f.slope_den)
        for m in range(part.m_start + 1, part.m_end + 1):
            value = reduce_mod(
                AlphaLinear(Fraction(0), Fraction(m)) * slope + part.shift, modulus, alpha
            )
            points.append(LabeledPoint(value, part_idx, m))
    ordered = sort_points(points, alpha)
    gaps, distinct = compute_gaps(ordered, modulus)
    return EmpiricalPWLReport(tuple(ordered), tuple(gaps), tuple(distinct))


REMARK_TARGETS = ("0.000612999", "0.006205886", "0.006818885", "0.007125385")


@dataclass(frozen=True)
class RemarkMatch:
    count: int  # number of multiples at which the match occurs
    convention: str  # "interval" (no wraparound) or "circle" (wraparound on [0, 1/2])
    gaps: tuple[AlphaLinear, ...]  # ascending exact gap values
    rounded: tuple[str, ...]  # the same gaps at 9 decimal places


class _SortedInserter:
    """Incremental exact-sorted list of values, float-filtered.

    Binary search uses certified float intervals and falls back to exact
    comparison only when the intervals overlap.
    """

    def __init__(self, oracle: AlphaOracle):
        self.oracle = oracle
        self.values: list[AlphaLinear] = []
        self._approx: list[tuple[float, float]] = []

    def insert(self, x: AlphaLinear) -> int:
        ax, ex = approx_with_error(x, self.oracle)
        lo, hi = 0, len(self.values)
        while lo < hi:
            mid = (lo + hi) // 2
            am, em = self._approx[mid]
            if ax - ex > am + em:
                c = GT
            elif ax + ex < am - em:
                c = LT
            else:
                c = compare(x, self.values[mid], self.oracle)
                if c == 0:
                    raise ExactnessViolation("duplicate value in a distance sequence")
            if c == GT:
                lo = mid + 1
            else:
                hi = mid
        self.values.insert(lo, x)
        self._approx.insert(lo, (ax, ex))
        return lo


def remark_search(
    max_count: int = 5000,
    targets: tuple[str, ...] = REMARK_TARGETS,
    alpha: AlphaOracle | None = None,
) -> list[RemarkMatch]:
    """Find multiple counts whose nearest-integer gap set rounds to targets.

    Scans count = 2..max_count over the distances of m*alpha to the
    nearest integer (alpha defaults to the cube root of 15), checking the
    rounded distinct gaps under both conventions: the sorted distances as
    an interval (no wraparound) and as a circle of circumference 1/2.
    An empty result is a valid outcome.
    """
    if alpha is None:
        alpha = NthRoot(Fraction(15), 3)
    if not isinstance(max_count, int) or max_count < 2:
        raise ConfigError("max_count must be an integer >= 2")
    want = tuple(sorted(targets, key=Fraction))
    size = len(want)
    half = Fraction(1, 2)
    inserter = _SortedInserter(alpha)
    gap_counts: Counter[AlphaLinear] = Counter()
    rounded_cache: dict[AlphaLinear, str] = {}

    def rounded(g: AlphaLinear) -> str:
        s = rounded_cache.get(g)
        if s is None:
            s = decimal_places_string(g, alpha, 9)
            rounded_cache[g] = s
        return s

    def ascending(values: set[AlphaLinear]) -> list[AlphaLinear]:
        # Tiny sets (the target size), so plain exact sorting is cheap.
        return sorted(values, key=cmp_to_key(lambda a, b: compare(a, b, alpha)))

    matches: list[RemarkMatch] = []
    for m in range(1, max_count + 1):
        x = nearest_int(AlphaLinear(Fraction(0), Fraction(m)), alpha)
        pos = inserter.insert(x)
        vals = inserter.values
        if len(vals) > 1:
            if pos + 1 < len(vals):
                gap_counts[vals[pos + 1] - x] += 1
            if pos > 0:
                gap_counts[x - vals[pos - 1]] += 1
            if 0 < pos < len(vals) - 1:
                old = vals[pos + 1] - vals[pos - 1]
                gap_counts[old] -= 1
                if gap_counts[old] == 0:
                    del gap_counts[old]
        if len(vals) < 2:
            continue
        interval_set = set(gap_counts)
        if len(interval_set) == size:
            asc = ascending(interval_set)
            if tuple(rounded(g) for g in asc) == want:
                matches.append(RemarkMatch(m, "interval", tuple(asc),
                                           tuple(rounded(g) for g in asc)))
        wrap = AlphaLinear.rational(half) + vals[0] - vals[-1]
        circle_set = interval_set | {wrap}
        if len(circle_set) == size:
            asc = ascending(circle_set)
            if tuple(rounded(g) for g in asc) == want:
                matches.append(RemarkMatch(m, "circle", tuple(asc),
                                           tuple(rounded(g) for g in asc)))
    return matches


@dataclass(frozen=True)
class DistinctCountScan:
    """First multiple count attaining each distinct-gap count, per convention.

    ``interval_first[k]`` is the smallest count whose sorted nearest-integer
    distances have exactly k distinct successive gaps; ``circle_first`` is
    the same with the wraparound gap (circumference 1/2) included.
    """

    max_count: int
    interval_first: tuple[tuple[int, int], ...]
    circle_first: tuple[tuple[int, int], ...]

    @property
    def interval_max(self) -> int:
        return max(k for k, _ in self.interval_first)

    @property
    def circle_max(self) -> int:
        return max(k for k, _ in self.circle_first)

    def first_attaining(self, distinct: int, convention: str) -> int | None:
        pairs = self.interval_first if convention == "interval" else self.circle_first
        return dict(pairs).get(distinct)


def distinct_count_scan(alpha: AlphaOracle, max_count: int) -> DistinctCountScan:
    """Scan count = 2..max_count recording distinct nearest-integer gap counts.

    Uses the same incremental insertion as remark_search but records, for
    each distinct-gap count ever observed, the first count attaining it,
    under both the interval and the wraparound conventions.
    """
    if not isinstance(max_count, int) or max_count < 2:
        raise ConfigError("max_count must be an integer >= 2")
    half = Fraction(1, 2)
    inserter = _SortedInserter(alpha)
    gap_counts: Counter[AlphaLinear] = Counter()
    interval_first: dict[int, int] = {}
    circle_first: dict[int, int] = {}
    for m in range(1, max_count + 1):
        x = nearest_int(AlphaLinear(Fraction(0), Fraction(m)), alpha)
        pos = inserter.insert(x)
        vals = inserter.values
        if len(vals) > 1:
            if pos + 1 < len(vals):
                gap_counts[vals[pos + 1] - x] += 1
            if pos > 0:
                gap_counts[x - vals[pos - 1]] += 1
            if 0 < pos < len(vals) - 1:
                old = vals[pos + 1] - vals[pos - 1]
                gap_counts[old] -= 1
                if gap_counts[old] == 0:
                    del gap_counts[old]
        if len(vals) < 2:
            continue
        interval_first.setdefault(len(gap_counts), m)
        wrap = AlphaLinear.rational(half) + vals[0] - vals[-1]
        circle_first.setdefault(len(set(gap_counts) | {wrap}), m)
    return DistinctCountScan(
        max_count,
        tuple(sorted(interval_first.items())),
        tuple(sorted(circle_first.items())),
    )
