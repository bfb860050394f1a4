"""Exact gap structures of affine images of multiples of an irrational.

The engine places points gamma_i(m) = (p_i/q) * frac(m*alpha) + k_i on a
circle [0, P) for several sequences at once, computes all gaps in exact
arithmetic, and verifies at runtime both the 3c bound on distinct gap
lengths and the interval-translation accounting behind it.
"""

from .exact import (
    ALPHA,
    EQ,
    GT,
    LT,
    ZERO,
    AlphaLinear,
    AlphaOracle,
    DecimalLiteral,
    NthRoot,
    PrecisionExhausted,
    Quadratic,
    Rational,
    alpha_enclosure,
    approximate,
    compare,
    decimal_string,
    floor_div,
    reduce_mod,
)
from .gridfrac import FracVariant, Grid, frac_part, grid_floor, grid_roof
from .engine import (
    BoundData,
    ClassificationInconsistency,
    ClassificationReport,
    ConfigError,
    ExactnessViolation,
    GapConfig,
    GapReport,
    IntervalKind,
    InvariantViolation,
    LabeledPoint,
    SequenceSpec,
    TheoremViolation,
    WitnessSet,
    classify_intervals,
    compute_bound_data,
    compute_gaps,
    generate_points,
    sort_points,
    translation_check,
    verify_bound,
    verify_orbits,
)
from .maps import (
    REMARK_TARGETS,
    BreakpointHit,
    DistinctCountScan,
    EmpiricalPWLReport,
    NearestIntReport,
    PWLFunction,
    PWLGapReport,
    PWLPiece,
    RemarkMatch,
    ZeroSlopePiece,
    classical_config,
    classical_three_gap,
    distinct_count_scan,
    doubled_circle_config,
    nearest_int,
    nearest_int_gaps,
    pwl_decompose,
    pwl_empirical_gaps,
    pwl_gaps,
    remark_search,
)
from .oracle import OracleComparison, OracleResult, check_against_engine, float_oracle_gaps
from .serialize import ConfigParseError, gap_config_to_json, parse_gap_config, report_to_json

__version__ = "0.1.0"
