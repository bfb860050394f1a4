"""Parameter sweeps over gap configurations, with CSV/JSON/plot outputs.

A sweep spec is a JSON object with a mode ("classical", "nearest",
"pwl", or "config"), the fixed parts of the problem, and a parameter:
either {"name": "count", "start", "stop", "step"} (or an explicit
"values" list) ranging over the multiplier count, or {"name": "alpha",
"alphas": [...]} ranging over oracle descriptions.  One row is computed
per parameter value; rows are deterministic and ordered, so repeated
runs produce byte-identical CSV files.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace

from .exact import PrecisionExhausted, decimal_string
from .engine import ConfigError, classify_intervals, verify_bound
from .maps import classical_config, doubled_circle_config, nearest_int_gaps, pwl_gaps
from .serialize import (
    ConfigParseError,
    parse_gap_config,
    parse_oracle,
    parse_pwl,
    parse_rational,
    sorted_values,
)

CSV_COLUMNS = (
    "param",
    "N_total",
    "distinct_gaps",
    "bound_3c",
    "bound_satisfied",
    "max_gap_decimal",
    "min_gap_decimal",
    "rigid_count",
    "error",
)

_DIGITS = 30


def _error_row(param: str, message: str) -> dict:
    row = {column: "" for column in CSV_COLUMNS}
    row["param"] = param
    row["error"] = message
    return row


def _report_row(param: str, report, rigid_count: int, n_total: int, distinct, bound: int) -> dict:
    oracle = report.config.alpha
    ordered = sorted_values(distinct, oracle)
    return {
        "param": param,
        "N_total": n_total,
        "distinct_gaps": len(distinct),
        "bound_3c": bound,
        "bound_satisfied": "true" if len(distinct) <= bound else "false",
        "max_gap_decimal": decimal_string(ordered[-1], oracle, _DIGITS),
        "min_gap_decimal": decimal_string(ordered[0], oracle, _DIGITS),
        "rigid_count": rigid_count,
        "error": "",
    }


def _compute_row(task_json: str) -> dict:
    task = json.loads(task_json)
    mode = task["mode"]
    param = task["param_label"]
    try:
        if mode == "classical":
            alpha = parse_oracle(task["alpha"])
            config = classical_config(alpha, task["count"])
            report = verify_bound(config)
            rigid = classify_intervals(config, report).rigid_count
            return _report_row(param, report, rigid, len(report.sorted_points),
                               report.distinct_gaps, report.bound_data.bound)
        if mode == "nearest":
            alpha = parse_oracle(task["alpha"])
            rep = nearest_int_gaps(alpha, task["count"])
            config = doubled_circle_config(alpha, task["count"])
            rigid = classify_intervals(config, rep.circle_report).rigid_count
            return _report_row(param, rep.circle_report, rigid, rep.count,
                               rep.distinct_gaps, 6)
        if mode == "pwl":
            alpha = parse_oracle(task["alpha"])
            f = parse_pwl(task["pwl"])
            rep = pwl_gaps(f, alpha, task["count"], parse_rational(task["P"], "P"))
            rigid = classify_intervals(rep.report.config, rep.report).rigid_count
            return _report_row(param, rep.report, rigid, len(rep.report.sorted_points),
                               rep.report.distinct_gaps, rep.report.bound_data.bound)
        if mode == "config":
            config = parse_gap_config(task["config"])
            if "count" in task:
                config = replace(config, sequences=tuple(
                    replace(seq, m_end=task["count"]) for seq in config.sequences
                ))
            report = verify_bound(config)
            rigid = classify_intervals(config, report).rigid_count
            return _report_row(param, report, rigid, len(report.sorted_points),
                               report.distinct_gaps, report.bound_data.bound)
        raise ConfigParseError(f"unknown sweep mode {mode!r}")
    except (ConfigError, PrecisionExhausted) as exc:
        return _error_row(param, str(exc))


def _parameter_values(spec: dict) -> list[tuple[str, dict]]:
    param = spec.get("parameter")
    if not isinstance(param, dict) or "name" not in param:
        raise ConfigParseError('sweep spec needs a "parameter" object with a "name"')
    name = param["name"]
    if name == "count":
        if "values" in param:
            values = param["values"]
            if not isinstance(values, list) or not all(
                isinstance(v, int) and not isinstance(v, bool) for v in values
            ):
                raise ConfigParseError("parameter.values must be a list of integers")
        else:
            try:
                start, stop = param["start"], param["stop"]
                step = param.get("step", 1)
            except KeyError as exc:
                raise ConfigParseError(f"parameter range needs {exc}") from exc
            if not all(isinstance(v, int) for v in (start, stop, step)) or step < 1:
                raise ConfigParseError("parameter start/stop/step must be integers, step >= 1")
            values = list(range(start, stop + 1, step))
        return [(str(v), {"count": v}) for v in values]
    if name == "alpha":
        alphas = param.get("alphas")
        if not isinstance(alphas, list) or not alphas:
            raise ConfigParseError("parameter.alphas must be a nonempty list")
        out = []
        for i, obj in enumerate(alphas):
            parse_oracle(obj, f"parameter.alphas[{i}]")  # validate early
            label = json.dumps(obj, sort_keys=True, separators=(",", ":"))
            out.append((label, {"alpha": obj}))
        return out
    raise ConfigParseError(f'unknown parameter name {name!r} (use "count" or "alpha")')


def expand_tasks(spec: dict) -> list[str]:
    """Validate a sweep spec and expand it into one task per row."""
    mode = spec.get("mode")
    if mode not in ("classical", "nearest", "pwl", "config"):
        raise ConfigParseError(
            'sweep spec needs "mode" of "classical", "nearest", "pwl", or "config"'
        )
    base: dict = {"mode": mode}
    if mode in ("classical", "nearest", "pwl"):
        if "alpha" in spec:
            base["alpha"] = spec["alpha"]
        if "count" in spec:
            base["count"] = spec["count"]
    if mode == "pwl":
        base["pwl"] = spec.get("pwl")
        if base["pwl"] is None:
            raise ConfigParseError('pwl sweeps need a "pwl" object')
        base["P"] = spec.get("P", 1)
    if mode == "config":
        if "config" not in spec:
            raise ConfigParseError('config sweeps need a "config" object')
        base["config"] = spec["config"]

    tasks = []
    for label, override in _parameter_values(spec):
        task = dict(base)
        task.update(override)
        task["param_label"] = label
        if mode in ("classical", "nearest", "pwl"):
            if "alpha" not in task:
                raise ConfigParseError(
                    'no alpha available: give a top-level "alpha" or sweep over alphas'
                )
            if "count" not in task:
                raise ConfigParseError(
                    'no count available: give a top-level "count" or sweep over counts'
                )
        tasks.append(json.dumps(task, sort_keys=True))
    return tasks


def run_sweep(spec: dict, workers: int = 1) -> list[dict]:
    """Compute all rows of a sweep; row order follows the parameter order."""
    tasks = expand_tasks(spec)
    if workers <= 1 or len(tasks) <= 1:
        return [_compute_row(t) for t in tasks]
    chunk = max(1, len(tasks) // (workers * 4))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_compute_row, tasks, chunksize=chunk))


def write_csv(rows: list[dict], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def write_plotdata(rows: list[dict], path) -> None:
    """Two columns, param and distinct gap count; error rows are skipped."""
    with open(path, "w", encoding="utf-8") as fh:
        for row in rows:
            if row["error"]:
                continue
            fh.write(f"{row['param']} {row['distinct_gaps']}\n")


def rows_to_json(rows: list[dict]) -> dict:
    return {"columns": list(CSV_COLUMNS), "rows": rows}
