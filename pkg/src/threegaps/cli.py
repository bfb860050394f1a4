"""Command-line explorer for gap configurations.

Exit codes: 0 = success, 1 = input problem (bad file, bad flag, config
validation, oracle precision too low), 2 = internal invariant violation
(a runtime mathematical check failed, which indicates a bug).
"""

from __future__ import annotations

import argparse
import random
import sys

from .exact import NthRoot, PrecisionExhausted
from .engine import ConfigError, InvariantViolation, classify_intervals, verify_bound
from .maps import (
    REMARK_TARGETS,
    classical_config,
    doubled_circle_config,
    nearest_int_gaps,
    pwl_empirical_gaps,
    pwl_gaps,
    remark_search,
)
from .oracle import check_against_engine
from .sampling import random_gap_config
from .serialize import (
    dump_json,
    empirical_pwl_report_to_json,
    load_json_file,
    nearest_report_to_json,
    parse_gap_config,
    parse_oracle,
    parse_pwl,
    parse_rational,
    pwl_report_to_json,
    remark_matches_to_json,
    report_to_json,
)
from .sweep import run_sweep, rows_to_json, write_csv, write_plotdata


def _require_count(doc: dict, minimum: int, where: str) -> int:
    count = doc.get("count")
    if isinstance(count, bool) or not isinstance(count, int) or count < minimum:
        raise ConfigError(f"{where}: \"count\" must be an integer >= {minimum}")
    return count


def _cmd_run(args) -> int:
    config = parse_gap_config(load_json_file(args.config))
    report = verify_bound(config)
    classification = classify_intervals(config, report) if args.classify else None
    print(
        f"{len(report.sorted_points)} points, {report.distinct_count} distinct gaps, "
        f"bound {report.bound_data.bound}, bound_satisfied={report.bound_satisfied}"
    )
    if classification is not None:
        print(f"rigid intervals: {classification.rigid_count}")
    if args.out_json:
        dump_json(report_to_json(report, args.digits, classification), args.out_json)
    return 0


def _cmd_classical(args) -> int:
    doc = load_json_file(args.config)
    alpha = parse_oracle(doc.get("alpha"), "alpha")
    count = _require_count(doc, 1, args.config)
    report = verify_bound(classical_config(alpha, count))
    print(
        f"{count} multiples: {report.distinct_count} distinct gaps "
        f"(classical bound 3), bound_satisfied={report.bound_satisfied}"
    )
    if args.out_json:
        dump_json(report_to_json(report, args.digits), args.out_json)
    return 0


def _cmd_nearest(args) -> int:
    doc = load_json_file(args.config)
    alpha = parse_oracle(doc.get("alpha"), "alpha")
    count = _require_count(doc, 2, args.config)
    rep = nearest_int_gaps(alpha, count)
    print(
        f"{count} nearest-integer distances: {rep.distinct_count} distinct gaps (bound 6)"
    )
    if args.out_json:
        dump_json(nearest_report_to_json(rep, args.digits), args.out_json)
    return 0


def _cmd_pwl(args) -> int:
    doc = load_json_file(args.config)
    alpha = parse_oracle(doc.get("alpha"), "alpha")
    f = parse_pwl(doc.get("pwl"), "pwl")
    count = _require_count(doc, 1, args.config)
    modulus = parse_rational(doc.get("P", 1), "P")
    if args.empirical:
        rep = pwl_empirical_gaps(f, alpha, count, modulus)
        print(
            f"{count} multiples through the map (empirical): "
            f"{len(rep.distinct_gaps)} distinct gaps"
        )
        if args.out_json:
            dump_json(empirical_pwl_report_to_json(rep, alpha, args.digits), args.out_json)
        return 0
    rep = pwl_gaps(f, alpha, count, modulus)
    print(
        f"{count} multiples through the map: {rep.report.distinct_count} distinct gaps, "
        f"run bound {rep.report.bound_data.bound}, map constant {rep.bound_constant}"
    )
    if args.out_json:
        dump_json(pwl_report_to_json(rep, args.digits), args.out_json)
    return 0


def _cmd_remark_search(args) -> int:
    matches = remark_search(args.mmax)
    alpha = NthRoot(15, 3)
    if matches:
        first = matches[0]
        print(f"{len(matches)} matches up to {args.mmax}; "
              f"first at count={first.count} ({first.convention} convention)")
    else:
        print(f"no count up to {args.mmax} matches the target gap set")
    if args.out_json:
        dump_json(
            remark_matches_to_json(matches, alpha, REMARK_TARGETS, args.mmax),
            args.out_json,
        )
    return 0


def _cmd_sweep(args) -> int:
    spec = load_json_file(args.config)
    rows = run_sweep(spec, workers=args.workers)
    errors = sum(1 for row in rows if row["error"])
    print(f"{len(rows)} rows ({errors} with errors)")
    if args.out_csv:
        write_csv(rows, args.out_csv)
    if args.out_json:
        dump_json(rows_to_json(rows), args.out_json)
    if args.out_plotdata:
        write_plotdata(rows, args.out_plotdata)
    return 0


def _cmd_oracle_check(args) -> int:
    if bool(args.config) == bool(args.random):
        raise ConfigError("give exactly one of --config or --random")
    failures = 0
    if args.config:
        comparisons = [(args.config, check_against_engine(
            parse_gap_config(load_json_file(args.config)), args.digits, args.agree_places))]
    else:
        rng = random.Random(args.seed)
        comparisons = []
        for i in range(args.random):
            config = random_gap_config(rng, max_end=args.random_max_end)
            comparisons.append((f"random[{i}]", check_against_engine(
                config, args.digits, args.agree_places)))
    for label, result in comparisons:
        status = "ok" if result.ok else "MISMATCH"
        print(
            f"{label}: {status}; distinct exact/oracle "
            f"{result.engine_distinct}/{result.oracle_distinct}, "
            f"max gap difference {result.max_difference}"
        )
        for message in result.messages:
            print(f"  {message}")
        if not result.ok:
            failures += 1
    if failures:
        print(f"{failures} comparison(s) failed", file=sys.stderr)
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="threegaps",
        description="Exact gap structures of affine images of multiples of an irrational.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True, digits=True):
        if config_required:
            p.add_argument("--config", required=True, help="path to a JSON config")
        p.add_argument("--out-json", help="write a JSON report here")
        if digits:
            p.add_argument("--digits", type=int, default=30,
                           help="significant digits for decimal renderings (default 30)")

    p = sub.add_parser("run", help="run a raw configuration and verify the 3c bound")
    add_common(p)
    p.add_argument("--classify", action="store_true",
                   help="include the rigid/translated interval classification")
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("classical", help="single-sequence fractional parts (bound 3)")
    add_common(p)
    p.set_defaults(func=_cmd_classical)

    p = sub.add_parser("nearest", help="distances to the nearest integer (bound 6)")
    add_common(p)
    p.set_defaults(func=_cmd_nearest)

    p = sub.add_parser("pwl", help="piecewise-linear image of the multiples")
    add_common(p)
    p.add_argument("--empirical", action="store_true",
                   help="evaluate the map directly; allows zero slopes, no bound claims")
    p.set_defaults(func=_cmd_pwl)

    p = sub.add_parser("remark-search",
                       help="search multiple counts for the cube-root-of-15 gap set")
    p.add_argument("--mmax", type=int, default=5000,
                   help="largest multiple count to scan (default 5000)")
    p.add_argument("--out-json", help="write the matches here")
    p.set_defaults(func=_cmd_remark_search)

    p = sub.add_parser("sweep", help="one row per parameter value, CSV/JSON/plot output")
    p.add_argument("--config", required=True, help="path to a sweep spec JSON")
    p.add_argument("--out-csv", help="write rows as CSV here")
    p.add_argument("--out-json", help="write rows as JSON here")
    p.add_argument("--out-plotdata", help="write 'param distinct' lines here")
    p.add_argument("--workers", type=int, default=1,
                   help="worker processes for row computation (default 1)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("oracle-check",
                       help="compare the exact pipeline against the float oracle")
    p.add_argument("--config", help="path to a JSON config")
    p.add_argument("--random", type=int, default=0, metavar="N",
                   help="check N random configurations instead of a file")
    p.add_argument("--seed", type=int, default=0, help="seed for --random (default 0)")
    p.add_argument("--digits", type=int, default=150,
                   help="oracle working precision in digits (default 150)")
    p.add_argument("--agree-places", type=int, default=100, dest="agree_places",
                   help="decimal places the pipelines must agree to (default 100)")
    p.add_argument("--random-max-end", type=int, default=75, dest="random_max_end",
                   help=argparse.SUPPRESS)
    p.set_defaults(func=_cmd_oracle_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, PrecisionExhausted) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
