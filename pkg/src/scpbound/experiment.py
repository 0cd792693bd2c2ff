"""Batch harness: generate instances, compute bounds, emit reports.

Each planned instance becomes one record with a fixed column set, so
runs are directly comparable and diffable. Records never abort the run:
any per-instance failure lands in the record's error column and the
harness moves on. Output is CSV plus a JSON mirror carrying the same
values at the same 9-significant-digit precision.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .bounds import (
    first_moment_bound,
    homogeneous_bound_certified,
    hypergeometric_first_moment_bound,
)
from .decomp import decomposed_bound, search_split
from .errors import DecompositionOrderingError, ScpboundError
from .gen import GenSpec, generate
from .matrix import row_profile
from .refine import bonferroni_bound
from .solve import DEFAULT_NODE_BUDGET, exact_cover, greedy_cover

__all__ = [
    "ExperimentPlan",
    "ExperimentReport",
    "run_experiment",
    "REPORT_COLUMNS",
    "ALL_METHODS",
    "DEFAULT_METHODS",
]

ALL_METHODS = ("first-moment", "hypergeometric", "homogeneous", "bonferroni", "decomposed")
DEFAULT_METHODS = ("first-moment", "hypergeometric", "homogeneous", "bonferroni")

REPORT_COLUMNS = (
    "index",
    "model",
    "m",
    "n",
    "delta",
    "seed",
    "mu",
    "nu",
    "d1",
    "d2",
    "d3",
    "d4",
    "min_density",
    "max_density",
    "mean_density",
    "first_moment_k",
    "hypergeometric_k",
    "homogeneous_certified_k",
    "homogeneous_literal_k",
    "bonferroni_k",
    "decomposed_total",
    "decomposed_sound_total",
    "greedy_size",
    "exact_size",
    "exact_status",
    "threshold",
    "greedy_over_threshold",
    "first_moment_over_threshold",
    "error",
)

#: sound certificates cross-checked against proved optima
SOUND_COLUMNS = (
    "first_moment_k",
    "hypergeometric_k",
    "homogeneous_certified_k",
    "bonferroni_k",
    "decomposed_sound_total",
)


@dataclass(frozen=True)
class ExperimentPlan:
    """What to generate and which methods to run on each instance.

    Exact solving is skipped (status "skipped") beyond exact_rows x
    exact_cols; split_effort feeds the decomposition search when the
    decomposed method is selected.
    """

    specs: tuple[GenSpec, ...]
    methods: tuple[str, ...] = DEFAULT_METHODS
    exact_rows: int = 16
    exact_cols: int = 20
    node_budget: int = DEFAULT_NODE_BUDGET
    split_effort: int = 2000

    def __post_init__(self) -> None:
        for method in self.methods:
            if method not in ALL_METHODS:
                raise ValueError(f"unknown method {method!r}, expected one of {ALL_METHODS}")


@dataclass(frozen=True)
class ExperimentReport:
    """Ordered records plus the indices of any soundness violations.

    A violation is a record whose proved optimum exceeds one of its
    sound certificates; the tuple holds (record index, column name)
    pairs and must stay empty for the library to be trusted.
    """

    columns: tuple[str, ...]
    records: tuple[dict, ...]
    violations: tuple[tuple[int, str], ...] = field(default_factory=tuple)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(self.columns)
        for rec in self.records:
            writer.writerow(_format_cell(rec[col]) for col in self.columns)
        return out.getvalue()

    def to_json(self) -> str:
        payload = {
            "schema": "scpbound/1",
            "columns": list(self.columns),
            "records": [
                {col: _json_cell(rec[col]) for col in self.columns} for rec in self.records
            ],
            "violations": [list(v) for v in self.violations],
        }
        return json.dumps(payload, indent=2) + "\n"


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _json_cell(value):
    # floats re-read from the CSV rendering so both files carry the same digits
    if isinstance(value, float):
        return float(f"{value:.9g}")
    return value


def _threshold(m: int, delta: float) -> float | None:
    if not 0.0 < delta < 1.0 or m < 2:
        return None
    return math.log(m) / abs(math.log1p(-delta))


def _evaluate(plan: ExperimentPlan, index: int, spec: GenSpec) -> dict:
    rec: dict = {col: None for col in REPORT_COLUMNS}
    rec["index"] = index
    rec["model"] = spec.model
    rec["m"] = spec.m
    rec["n"] = spec.n
    rec["seed"] = spec.seed
    if spec.model == "planted":
        rec["mu"] = spec.mu
        rec["nu"] = spec.nu
        rec["d1"] = spec.d1
        rec["d2"] = spec.d2
        rec["d3"] = spec.d3
        rec["d4"] = spec.d4
    else:
        rec["delta"] = spec.delta

    errors: list[str] = []

    def note(exc: Exception) -> None:
        text = str(exc) or repr(exc)
        if text not in errors:
            errors.append(text)

    try:
        matrix = generate(spec)
    except Exception as exc:
        note(exc)
        rec["error"] = "; ".join(errors)
        return rec

    profile = row_profile(matrix)
    rec["min_density"] = profile.min_density
    rec["max_density"] = profile.max_density
    mean_density = matrix.total_ones() / (matrix.m * matrix.n)
    rec["mean_density"] = mean_density

    # the comparison threshold log m / |log(1-delta)| uses the model's
    # target density when there is one, else the measured mean
    base_delta = mean_density if spec.model == "planted" else spec.delta
    rec["threshold"] = _threshold(spec.m, base_delta)

    if "first-moment" in plan.methods:
        try:
            rec["first_moment_k"] = first_moment_bound(profile).k
        except ScpboundError as exc:
            note(exc)
    if "hypergeometric" in plan.methods:
        try:
            rec["hypergeometric_k"] = hypergeometric_first_moment_bound(matrix).k
        except ScpboundError as exc:
            note(exc)
    if "homogeneous" in plan.methods:
        try:
            pair = homogeneous_bound_certified(matrix)
            rec["homogeneous_certified_k"] = pair.certified.k
            rec["homogeneous_literal_k"] = pair.literal.k
        except ScpboundError as exc:
            note(exc)
    if "bonferroni" in plan.methods:
        try:
            rec["bonferroni_k"] = bonferroni_bound(matrix).k
        except ScpboundError as exc:
            note(exc)
    if "decomposed" in plan.methods and matrix.m >= 3 and matrix.n >= 2:
        try:
            *_, dec = search_split(matrix, effort=plan.split_effort, seed=spec.seed)
        except ScpboundError as exc:
            note(exc)
            dec = None
        if dec is not None:
            # a split whose formulas do not apply (densities at 1, or the
            # ordering fails) simply leaves the cells empty
            if dec.valid:
                try:
                    literal = decomposed_bound(dec)
                    if literal.feasible:
                        rec["decomposed_total"] = literal.total
                except (DecompositionOrderingError, ValueError):
                    pass
            try:
                sound = decomposed_bound(dec, sound=True, allow_invalid=True)
                if sound.feasible:
                    rec["decomposed_sound_total"] = sound.total
            except (DecompositionOrderingError, ValueError):
                pass

    try:
        rec["greedy_size"] = greedy_cover(matrix).size
    except ScpboundError as exc:
        note(exc)
    if spec.m <= plan.exact_rows and spec.n <= plan.exact_cols:
        try:
            solution = exact_cover(matrix, node_budget=plan.node_budget)
            rec["exact_size"] = solution.size
            rec["exact_status"] = solution.status
        except ScpboundError as exc:
            note(exc)
    else:
        rec["exact_status"] = "skipped"

    threshold = rec["threshold"]
    if threshold:
        if rec["greedy_size"] is not None:
            rec["greedy_over_threshold"] = rec["greedy_size"] / threshold
        if rec["first_moment_k"] is not None:
            rec["first_moment_over_threshold"] = rec["first_moment_k"] / threshold

    if errors:
        rec["error"] = "; ".join(errors)
    return rec


def _thread_count() -> int:
    raw = os.environ.get("SCPBOUND_THREADS", "")
    try:
        return max(0, int(raw))
    except ValueError:
        return 0


def run_experiment(
    plan: ExperimentPlan,
    csv_path: str | Path | None = None,
    json_path: str | Path | None = None,
) -> ExperimentReport:
    """Evaluate every planned instance and optionally write both reports.

    Instances may be evaluated in parallel (SCPBOUND_THREADS > 1) but
    records always appear in plan order, so output bytes depend only on
    the plan.
    """
    threads = _thread_count()
    if threads > 1 and len(plan.specs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            records = list(
                pool.map(lambda pair: _evaluate(plan, *pair), enumerate(plan.specs))
            )
    else:
        records = [_evaluate(plan, index, spec) for index, spec in enumerate(plan.specs)]

    violations = []
    for rec in records:
        if rec["exact_status"] != "proved":
            continue
        for col in SOUND_COLUMNS:
            value = rec[col]
            if value is not None and value < rec["exact_size"]:
                violations.append((rec["index"], col))

    report = ExperimentReport(REPORT_COLUMNS, tuple(records), tuple(violations))
    if csv_path is not None:
        Path(csv_path).write_text(report.to_csv())
    if json_path is not None:
        Path(json_path).write_text(report.to_json())
    return report
