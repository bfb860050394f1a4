"""JSON wire formats for configurations and reports.

Rationals travel as "num/den" strings (or bare integers), exact values
as {"u": ..., "v": ...} coefficient pairs, and alpha oracles as tagged
objects.  Round-trips are bit-exact.  Reports additionally carry decimal
renderings (30 significant digits by default) for human consumption;
those are derived fields and are not read back.
"""

from __future__ import annotations

import json
from fractions import Fraction
from functools import cmp_to_key

from .exact import (
    AlphaLinear,
    AlphaOracle,
    DecimalLiteral,
    NthRoot,
    Quadratic,
    compare,
    decimal_string,
)
from .engine import (
    ClassificationReport,
    ConfigError,
    GapConfig,
    GapReport,
    LabeledPoint,
    SequenceSpec,
)
from .gridfrac import FracVariant
from .maps import (
    EmpiricalPWLReport,
    NearestIntReport,
    PWLFunction,
    PWLGapReport,
    PWLPiece,
    RemarkMatch,
)


class ConfigParseError(ConfigError):
    """A JSON document could not be turned into a configuration."""


def load_json_file(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    except OSError as exc:
        raise ConfigParseError(f"{path}: {exc.strerror or exc}") from exc


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ConfigParseError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigParseError(f"{where}: not a rational: {value!r}") from exc
    raise ConfigParseError(f"{where}: expected a rational string, got {type(value).__name__}")


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise ConfigParseError(f"{where}: expected an object")
    if key not in obj:
        raise ConfigParseError(f"{where}: missing required key {key!r}")
    return obj[key]


def _require_int(obj: dict, key: str, where: str) -> int:
    value = _require(obj, key, where)
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigParseError(f"{where}.{key}: expected an integer, got {value!r}")
    return value


def alpha_linear_to_json(x: AlphaLinear) -> dict:
    return {"u": format_rational(x.u), "v": format_rational(x.v)}


def parse_alpha_linear(obj, where: str) -> AlphaLinear:
    return AlphaLinear(
        parse_rational(_require(obj, "u", where), f"{where}.u"),
        parse_rational(_require(obj, "v", where), f"{where}.v"),
    )


def oracle_to_json(oracle: AlphaOracle) -> dict:
    if isinstance(oracle, Quadratic):
        return {"kind": "quadratic", "a": format_rational(oracle.a),
                "b": format_rational(oracle.b), "radicand": oracle.radicand}
    if isinstance(oracle, NthRoot):
        return {"kind": "nthroot", "radicand": format_rational(oracle.radicand),
                "degree": oracle.degree}
    if isinstance(oracle, DecimalLiteral):
        return {"kind": "decimal", "digits": oracle.digits,
                "precision_bits": oracle.precision_bits}
    raise TypeError(f"unknown oracle type {type(oracle).__name__}")


def parse_oracle(obj, where: str = "alpha") -> AlphaOracle:
    kind = _require(obj, "kind", where)
    try:
        if kind == "quadratic":
            return Quadratic(
                parse_rational(_require(obj, "a", where), f"{where}.a"),
                parse_rational(_require(obj, "b", where), f"{where}.b"),
                _require_int(obj, "radicand", where),
            )
        if kind == "nthroot":
            return NthRoot(
                parse_rational(_require(obj, "radicand", where), f"{where}.radicand"),
                _require_int(obj, "degree", where),
            )
        if kind == "decimal":
            digits = _require(obj, "digits", where)
            if not isinstance(digits, str):
                raise ConfigParseError(f"{where}.digits: expected a string")
            return DecimalLiteral(digits, _require_int(obj, "precision_bits", where))
    except ConfigParseError:
        raise
    except ValueError as exc:
        raise ConfigParseError(f"{where}: {exc}") from exc
    raise ConfigParseError(f"{where}.kind: unknown oracle kind {kind!r}")


def gap_config_to_json(config: GapConfig) -> dict:
    return {
        "alpha": oracle_to_json(config.alpha),
        "q": config.slope_den,
        "P": format_rational(config.modulus),
        "lambda_multiplier": "inf" if config.grid_multiplier is None else config.grid_multiplier,
        "variant": config.variant.value,
        "sequences": [
            {
                "p": seq.slope_num,
                "k": alpha_linear_to_json(seq.shift),
                "n": seq.m_start,
                "N": seq.m_end,
            }
            for seq in config.sequences
        ],
    }


def parse_gap_config(obj, where: str = "config") -> GapConfig:
    alpha = parse_oracle(_require(obj, "alpha", where), f"{where}.alpha")
    raw_lambda = _require(obj, "lambda_multiplier", where)
    if raw_lambda == "inf":
        multiplier = None
    elif isinstance(raw_lambda, int) and not isinstance(raw_lambda, bool):
        multiplier = raw_lambda
    else:
        raise ConfigParseError(
            f'{where}.lambda_multiplier: expected an integer or "inf", got {raw_lambda!r}'
        )
    variant_raw = _require(obj, "variant", where)
    try:
        variant = FracVariant(variant_raw)
    except ValueError as exc:
        raise ConfigParseError(f"{where}.variant: unknown variant {variant_raw!r}") from exc
    raw_seqs = _require(obj, "sequences", where)
    if not isinstance(raw_seqs, list):
        raise ConfigParseError(f"{where}.sequences: expected a list")
    sequences = []
    for idx, raw in enumerate(raw_seqs):
        sub = f"{where}.sequences[{idx}]"
        sequences.append(SequenceSpec(
            slope_num=_require_int(raw, "p", sub),
            shift=parse_alpha_linear(_require(raw, "k", sub), f"{sub}.k"),
            m_start=_require_int(raw, "n", sub),
            m_end=_require_int(raw, "N", sub),
        ))
    return GapConfig(
        alpha=alpha,
        slope_den=_require_int(obj, "q", where),
        sequences=tuple(sequences),
        modulus=parse_rational(_require(obj, "P", where), f"{where}.P"),
        grid_multiplier=multiplier,
        variant=variant,
    )


def pwl_to_json(f: PWLFunction) -> dict:
    return {
        "q": f.slope_den,
        "breakpoints": [format_rational(b) for b in f.breakpoints],
        "pieces": [
            {"p": piece.slope_num, "k": alpha_linear_to_json(piece.shift)}
            for piece in f.pieces
        ],
    }


def parse_pwl(obj, where: str = "pwl") -> PWLFunction:
    raw_bps = _require(obj, "breakpoints", where)
    raw_pieces = _require(obj, "pieces", where)
    if not isinstance(raw_bps, list) or not isinstance(raw_pieces, list):
        raise ConfigParseError(f"{where}: breakpoints and pieces must be lists")
    return PWLFunction(
        slope_den=_require_int(obj, "q", where),
        breakpoints=tuple(
            parse_rational(b, f"{where}.breakpoints[{i}]") for i, b in enumerate(raw_bps)
        ),
        pieces=tuple(
            PWLPiece(
                slope_num=_require_int(raw, "p", f"{where}.pieces[{i}]"),
                shift=parse_alpha_linear(
                    _require(raw, "k", f"{where}.pieces[{i}]"), f"{where}.pieces[{i}].k"
                ),
            )
            for i, raw in enumerate(raw_pieces)
        ),
    )


def _value_entry(x: AlphaLinear, oracle: AlphaOracle, digits: int) -> dict:
    entry = alpha_linear_to_json(x)
    entry["decimal"] = decimal_string(x, oracle, digits)
    return entry


def point_to_json(p: LabeledPoint, oracle: AlphaOracle, digits: int) -> dict:
    return {
        "seq_index": p.seq_index,
        "multiplier": p.multiplier,
        "value": _value_entry(p.value, oracle, digits),
    }


def sorted_values(values, oracle: AlphaOracle) -> list[AlphaLinear]:
    return sorted(values, key=cmp_to_key(lambda a, b: compare(a, b, oracle)))


def report_to_json(
    report: GapReport,
    digits: int = 30,
    classification: ClassificationReport | None = None,
    include_points: bool = True,
) -> dict:
    oracle = report.config.alpha
    bd = report.bound_data
    out = {
        "config": gap_config_to_json(report.config),
        "total_points": len(report.sorted_points),
        "gaps": [_value_entry(g, oracle, digits) for g in report.gaps],
        "distinct_gaps": [
            _value_entry(g, oracle, digits)
            for g in sorted_values(report.distinct_gaps, oracle)
        ],
        "distinct_gap_count": report.distinct_count,
        "bound": {
            "slope_lcm": bd.slope_lcm,
            "shift_step": format_rational(bd.shift_step),
            "cofactors": list(bd.cofactors),
            "cofactor_sum": bd.cofactor_sum,
            "distinct_gap_bound": bd.bound,
        },
        "bound_satisfied": report.bound_satisfied,
    }
    if include_points:
        out["points"] = [point_to_json(p, oracle, digits) for p in report.sorted_points]
    if classification is not None:
        out["classification"] = classification_to_json(classification, oracle, digits)
    return out


def classification_to_json(
    cr: ClassificationReport, oracle: AlphaOracle, digits: int = 30
) -> dict:
    def point_id(p: LabeledPoint) -> list[int]:
        return [p.seq_index, p.multiplier]

    return {
        "rigid_count": cr.rigid_count,
        "intervals": [
            {
                "index": iv.index,
                "left": point_id(iv.left),
                "right": point_id(iv.right),
                "length": _value_entry(iv.length, oracle, digits),
                "kind": iv.kind.value,
                "witness": None if iv.witness is None else point_id(iv.witness),
                "witness_set": None if iv.witness_set is None else iv.witness_set.value,
                "translate_to": iv.translate_to,
            }
            for iv in cr.intervals
        ],
        "start_points": [point_id(p) for p in cr.start_points],
        "finish_points": [point_id(p) for p in cr.finish_points],
        "orbit_lengths": list(cr.orbit_lengths),
    }


def nearest_report_to_json(rep: NearestIntReport, digits: int = 30) -> dict:
    oracle = rep.circle_report.config.alpha
    return {
        "count": rep.count,
        "bound": 6,
        "values": [point_to_json(p, oracle, digits) for p in rep.points],
        "gaps": [_value_entry(g, oracle, digits) for g in rep.gaps],
        "distinct_gaps": [
            _value_entry(g, oracle, digits)
            for g in sorted_values(rep.distinct_gaps, oracle)
        ],
        "distinct_gap_count": rep.distinct_count,
        "circle": report_to_json(rep.circle_report, digits, include_points=False),
    }


def pwl_report_to_json(rep: PWLGapReport, digits: int = 30) -> dict:
    out = report_to_json(rep.report, digits)
    out["map_bound_constant"] = rep.bound_constant
    return out


def empirical_pwl_report_to_json(
    rep: EmpiricalPWLReport, oracle: AlphaOracle, digits: int = 30
) -> dict:
    return {
        "total_points": len(rep.points),
        "points": [point_to_json(p, oracle, digits) for p in rep.points],
        "gaps": [_value_entry(g, oracle, digits) for g in rep.gaps],
        "distinct_gaps": [
            _value_entry(g, oracle, digits)
            for g in sorted_values(rep.distinct_gaps, oracle)
        ],
        "distinct_gap_count": len(rep.distinct_gaps),
    }


def remark_matches_to_json(
    matches: list[RemarkMatch], oracle: AlphaOracle, targets, max_count: int
) -> dict:
    return {
        "targets": list(targets),
        "max_count": max_count,
        "matches": [
            {
                "count": m.count,
                "convention": m.convention,
                "gaps": [
                    dict(alpha_linear_to_json(g), rounded=r)
                    for g, r in zip(m.gaps, m.rounded)
                ],
            }
            for m in matches
        ],
    }


def dump_json(obj: dict, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2, sort_keys=False)
        fh.write("\n")
