"""Independent floating-point recomputation of gap structures.

Everything here recomputes the circle points from the raw configuration
fields with mpmath at a requested working precision; none of the exact
arithmetic paths are reused.  Agreement between the two pipelines is the
strongest end-to-end check the package has.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction

import mpmath as mp

from .exact import AlphaOracle, DecimalLiteral, NthRoot, Quadratic, approximate
from .engine import ConfigError, GapConfig, GapReport, verify_bound
from .gridfrac import FracVariant
from .serialize import sorted_values

MIN_DIGITS = 30


def _mpf_fraction(x: Fraction) -> mp.mpf:
    return mp.mpf(x.numerator) / mp.mpf(x.denominator)


def _alpha_value(oracle: AlphaOracle) -> mp.mpf:
    if isinstance(oracle, Quadratic):
        return _mpf_fraction(oracle.a) + _mpf_fraction(oracle.b) * mp.sqrt(oracle.radicand)
    if isinstance(oracle, NthRoot):
        return mp.root(_mpf_fraction(oracle.radicand), oracle.degree)
    if isinstance(oracle, DecimalLiteral):
        return mp.mpf(oracle.digits)
    raise TypeError(f"unknown oracle type {type(oracle).__name__}")


@dataclass(frozen=True)
class OracleResult:
    """Float-pipeline gaps as decimal strings, with reliability warnings."""

    gaps_decimal: tuple[str, ...]  # circle order: wraparound first
    distinct_count: int
    digits: int
    warnings: tuple[str, ...]


def float_oracle_gaps(config: GapConfig, digits: int = 50) -> OracleResult:
    """Recompute the gap multiset of a configuration in plain floats.

    Points within 10**(-digits+5) are treated as ties and ordered by
    (seq_index, multiplier), mirroring the exact tie-break; pairs closer
    than 10**(-digits+10) trigger a reliability warning.
    """
    if not isinstance(digits, int) or digits < MIN_DIGITS:
        raise ConfigError(f"digits must be an integer >= {MIN_DIGITS}")
    warnings: list[str] = []
    with mp.workdps(digits + 15):
        alpha = _alpha_value(config.alpha)
        modulus = _mpf_fraction(config.modulus)
        step = None
        if config.grid_multiplier is not None:
            step = config.grid_multiplier * config.slope_den * modulus
        prime = config.variant is FracVariant.PRIME
        entries = []
        for i, seq in enumerate(config.sequences, start=1):
            slope = mp.mpf(seq.slope_num) / mp.mpf(config.slope_den)
            shift = _mpf_fraction(seq.shift.u) + _mpf_fraction(seq.shift.v) * alpha
            for m in range(seq.m_start + 1, seq.m_end + 1):
                x = m * alpha
                if step is None:
                    frac = x
                else:
                    ratio = x / step
                    rounded = mp.ceil(ratio) if (prime and x < 0) else mp.floor(ratio)
                    frac = x - rounded * step
                value = slope * frac + shift
                value -= mp.floor(value / modulus) * modulus
                while value < 0:
                    value += modulus
                while value >= modulus:
                    value -= modulus
                entries.append((value, i, m))
        entries.sort(key=lambda e: e[0])
        tie_tol = mp.mpf(10) ** (-digits + 5)
        warn_tol = mp.mpf(10) ** (-digits + 10)
        # Regroup ties so the (i, m) order matches the exact pipeline.
        grouped = []
        cluster = [entries[0]]
        for entry in entries[1:]:
            if entry[0] - cluster[-1][0] <= tie_tol:
                cluster.append(entry)
            else:
                grouped.extend(sorted(cluster, key=lambda e: (e[1], e[2])))
                cluster = [entry]
        grouped.extend(sorted(cluster, key=lambda e: (e[1], e[2])))
        for a, b in zip(entries, entries[1:]):
            diff = b[0] - a[0]
            if 0 < diff < warn_tol:
                warnings.append(
                    f"points ({a[1]},{a[2]}) and ({b[1]},{b[2]}) differ by ~{mp.nstr(diff, 3)}; "
                    f"below the reliability limit 1e{-digits + 10}"
                )
        values = [e[0] for e in grouped]
        gaps = [modulus + values[0] - values[-1]]
        gaps.extend(b - a for a, b in zip(values, values[1:]))
        distinct = 1
        for a, b in zip(sorted(gaps), sorted(gaps)[1:]):
            if b - a > tie_tol:
                distinct += 1
        rendered = tuple(mp.nstr(g, digits) for g in gaps)
    return OracleResult(
        gaps_decimal=rendered,
        distinct_count=distinct,
        digits=digits,
        warnings=tuple(warnings),
    )


@dataclass(frozen=True)
class OracleComparison:
    ok: bool
    engine_distinct: int
    oracle_distinct: int
    max_difference: str  # decimal string of the worst gap disagreement
    agree_places: int
    messages: tuple[str, ...]


def check_against_engine(
    config: GapConfig,
    digits: int = 150,
    agree_places: int = 100,
    report: GapReport | None = None,
) -> OracleComparison:
    """Compare the exact pipeline with the float oracle gap by gap.

    Both gap multisets are sorted ascending and compared pairwise to
    agree_places decimal places; the distinct counts must match too.
    """
    if agree_places >= digits - 10:
        raise ConfigError("agree_places must leave headroom below the oracle digits")
    if report is None:
        report = verify_bound(config)
    oracle_result = float_oracle_gaps(config, digits)
    exact_sorted = sorted_values(report.gaps, config.alpha)
    float_sorted = sorted(Fraction(Decimal(s)) for s in oracle_result.gaps_decimal)
    messages = list(oracle_result.warnings)
    ok = True
    if len(exact_sorted) != len(float_sorted):  # cannot happen; both are N_total
        raise AssertionError("gap counts diverged")
    mid_tol = Fraction(1, 10 ** (agree_places + 5))
    allowed = Fraction(1, 10 ** agree_places)
    worst = Fraction(0)
    for exact_gap, float_gap in zip(exact_sorted, float_sorted):
        mid = approximate(exact_gap, config.alpha, mid_tol)
        diff = abs(mid - float_gap)
        worst = max(worst, diff)
        if diff + mid_tol > allowed:
            ok = False
            messages.append(
                f"gap disagreement beyond 1e-{agree_places}: exact~{float(mid)}, "
                f"oracle {float(float_gap)}"
            )
    if report.distinct_count != oracle_result.distinct_count:
        ok = False
        messages.append(
            f"distinct counts differ: exact {report.distinct_count}, "
            f"oracle {oracle_result.distinct_count}"
        )
    with mp.workdps(20):
        worst_str = mp.nstr(_mpf_fraction(worst), 6)
    return OracleComparison(
        ok=ok,
        engine_distinct=report.distinct_count,
        oracle_distinct=oracle_result.distinct_count,
        max_difference=worst_str,
        agree_places=agree_places,
        messages=tuple(messages),
    )
