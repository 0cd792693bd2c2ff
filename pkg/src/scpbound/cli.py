"""Command-line front end.

Subcommands map one-to-one onto the library: bound and refine compute
certificates from a matrix file, decompose measures and bounds a block
split, solve runs the greedy or exact solver, gen writes a seeded random
instance, and experiment drives the batch harness.

Exit codes: 0 success, 1 infeasible instance (a row with no ones),
2 no bound produced (including row-cap refusals), 3 input or parse
error, 4 invalid flags or parameters, 5 internal invariant violation
(including a soundness violation in an experiment report).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from .bounds import (
    BoundResult,
    first_moment_bound,
    homogeneous_bound_certified,
    hypergeometric_first_moment_bound,
)
from .decomp import DecompositionBound, decomposed_bound, make_decomposition, search_split
from .errors import (
    DecompositionOrderingError,
    InfeasibleInstanceError,
    InternalInvariantError,
    ParseError,
    RowLimitError,
)
from .experiment import ALL_METHODS, DEFAULT_METHODS, ExperimentPlan, run_experiment
from .gen import GenSpec, generate
from .matrix import BinaryMatrix, parse_matrix, row_profile, serialize_matrix
from .refine import DEFAULT_ROW_CAP, bonferroni_bound, bonferroni_condition
from .solve import DEFAULT_NODE_BUDGET, exact_cover, greedy_cover

__all__ = ["main"]

SCHEMA = "scpbound/1"


class _Parser(argparse.ArgumentParser):
    """argparse rejects bad flags with status 2; the contract says 4."""

    def error(self, message):
        self.exit(4, f"{self.prog}: error: {message}\n")


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.9g}"
    return str(value)


def _json_value(value):
    if isinstance(value, float):
        return float(f"{value:.9g}")
    return value


def _json_dict(mapping: dict) -> dict:
    return {key: _json_value(value) for key, value in mapping.items()}


def _read_matrix(path: str) -> BinaryMatrix:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_matrix(text)


def _emit(text_lines: list[str], payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _result_row(label: str, result: BoundResult) -> str:
    return (
        f"{label:<24} k={_fmt(result.k):<6} sound={_fmt(result.sound):<4} "
        f"condition_at_k={_fmt(result.condition_at_k)} "
        f"condition_before={_fmt(result.condition_before)}"
    )


def _result_payload(label: str, result: BoundResult) -> dict:
    data = _json_dict(asdict(result))
    data["label"] = label
    return data


def cmd_bound(args) -> int:
    matrix = _read_matrix(args.input)
    results: list[tuple[str, BoundResult]] = []
    method = args.method
    if method in ("first-moment", "all"):
        results.append(("first-moment", first_moment_bound(row_profile(matrix))))
    if method in ("hypergeometric", "all"):
        results.append(("hypergeometric", hypergeometric_first_moment_bound(matrix)))
    if method in ("homogeneous", "all"):
        pair = homogeneous_bound_certified(matrix)
        results.append(("homogeneous-certified", pair.certified))
        results.append(("homogeneous-literal", pair.literal))
    if method in ("bonferroni", "all"):
        results.append(("bonferroni", bonferroni_bound(matrix, max_rows=args.max_rows)))

    lines = [_result_row(label, result) for label, result in results]
    payload = {
        "schema": SCHEMA,
        "command": "bound",
        "m": matrix.m,
        "n": matrix.n,
        "results": [_result_payload(label, result) for label, result in results],
    }
    _emit(lines, payload, args.format)
    if any(result.k is not None for _, result in results):
        return 0
    print("error: no bound found with k <= n", file=sys.stderr)
    return 2


def cmd_refine(args) -> int:
    matrix = _read_matrix(args.input)
    if args.k is not None:
        witness = bonferroni_condition(matrix, args.k, max_rows=args.max_rows)
        lines = [
            f"k {witness.k}",
            f"s1 {_fmt(witness.s1)}",
            f"s2 {_fmt(witness.s2)}",
            f"s3 {_fmt(witness.s3)}",
            f"rhs {_fmt(witness.rhs)}",
            f"satisfied {_fmt(witness.satisfied)}",
            f"bound_ratio {_fmt(witness.bound_ratio)}",
        ]
        payload = {
            "schema": SCHEMA,
            "command": "refine",
            "m": matrix.m,
            "n": matrix.n,
            "witness": _json_dict(asdict(witness) | {"bound_ratio": witness.bound_ratio}),
        }
        _emit(lines, payload, args.format)
        return 0

    result = bonferroni_bound(matrix, max_rows=args.max_rows)
    lines = [_result_row("bonferroni", result)]
    payload = {
        "schema": SCHEMA,
        "command": "refine",
        "m": matrix.m,
        "n": matrix.n,
        "results": [_result_payload("bonferroni", result)],
    }
    _emit(lines, payload, args.format)
    if result.k is None:
        print("error: no bound found with k <= n", file=sys.stderr)
        return 2
    return 0


def _split_arg(text: str) -> tuple[int, int]:
    try:
        left, right = text.split(",")
        return int(left), int(right)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected r,c integers, got {text!r}") from None


def _bound_lines(label: str, bound: DecompositionBound | None, note: str) -> list[str]:
    if bound is None:
        return [f"{label}: unavailable ({note})"]
    return [
        f"{label}: k1={bound.k1} k2={bound.k2} total={bound.total} "
        f"feasible={_fmt(bound.feasible)} alpha={_fmt(bound.alpha)} "
        f"total_real={_fmt(bound.total_real)}"
    ]


def cmd_decompose(args) -> int:
    matrix = _read_matrix(args.input)
    row_perm = col_perm = None
    if args.split is not None:
        r, c = args.split
        dec = make_decomposition(matrix, r, c)
    else:
        row_perm, col_perm, r, c, dec = search_split(matrix, effort=args.effort, seed=args.seed)

    literal = sound = None
    literal_note = sound_note = "not computed"
    if matrix.m >= 3:
        if dec.valid:
            try:
                literal = decomposed_bound(dec)
            except (DecompositionOrderingError, ValueError) as exc:
                literal_note = str(exc)
        else:
            literal_note = "split fails the density ordering"
        try:
            sound = decomposed_bound(dec, sound=True, allow_invalid=True)
        except (DecompositionOrderingError, ValueError) as exc:
            sound_note = str(exc)
    else:
        literal_note = sound_note = "need at least 3 rows"

    lines = [
        f"split r={dec.r} c={dec.c}",
        f"mu {_fmt(dec.mu)}",
        f"nu {_fmt(dec.nu)}",
        "block_max_density " + " ".join(_fmt(d) for d in dec.block_max_density),
        "block_min_density " + " ".join(_fmt(d) for d in dec.block_min_density),
        f"valid {_fmt(dec.valid)}",
    ]
    lines += _bound_lines("literal", literal, literal_note)
    lines += _bound_lines("sound", sound, sound_note)
    if row_perm is not None:
        lines.append("row_perm " + " ".join(str(i + 1) for i in row_perm))
        lines.append("col_perm " + " ".join(str(j + 1) for j in col_perm))

    payload = {
        "schema": SCHEMA,
        "command": "decompose",
        "decomposition": _json_dict(asdict(dec)),
        "literal": None if literal is None else _json_dict(asdict(literal)),
        "sound": None if sound is None else _json_dict(asdict(sound)),
    }
    if row_perm is not None:
        payload["row_perm"] = [i + 1 for i in row_perm]
        payload["col_perm"] = [j + 1 for j in col_perm]
    _emit(lines, payload, args.format)

    usable = [b for b in (literal, sound) if b is not None and b.feasible]
    if usable:
        return 0
    print("error: no feasible decomposition bound for this split", file=sys.stderr)
    return 2


def cmd_solve(args) -> int:
    matrix = _read_matrix(args.input)
    if args.exact:
        solution = exact_cover(matrix, node_budget=args.node_budget)
    else:
        solution = greedy_cover(matrix)
    lines = [
        "columns " + " ".join(str(j) for j in solution.columns),
        f"size {solution.size}",
        f"status {solution.status}",
    ]
    if args.exact:
        lines.append(f"nodes {solution.nodes}")
    payload = {
        "schema": SCHEMA,
        "command": "solve",
        "columns": list(solution.columns),
        "size": solution.size,
        "status": solution.status,
        "nodes": solution.nodes,
    }
    _emit(lines, payload, args.format)
    return 0


def cmd_gen(args) -> int:
    spec = GenSpec(
        model=args.model,
        m=args.m,
        n=args.n,
        delta=args.delta,
        d1=args.d1,
        d2=args.d2,
        d3=args.d3,
        d4=args.d4,
        mu=args.mu,
        nu=args.nu,
        seed=args.seed,
    )
    text = serialize_matrix(generate(spec), fmt=args.fmt)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)
    return 0


def _methods_arg(text: str) -> tuple[str, ...]:
    if text == "all":
        return ALL_METHODS
    methods = tuple(part.strip() for part in text.split(",") if part.strip())
    for method in methods:
        if method not in ALL_METHODS:
            raise argparse.ArgumentTypeError(
                f"unknown method {method!r}, expected from {ALL_METHODS} or 'all'"
            )
    return methods


def _size_arg(text: str) -> tuple[int, int]:
    try:
        m, n = text.lower().split("x")
        return int(m), int(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected MxN, got {text!r}") from None


def cmd_experiment(args) -> int:
    deltas = args.delta if args.delta else [0.5]
    specs = []
    for m, n in args.size:
        for delta in deltas:
            for offset in range(args.seeds):
                specs.append(
                    GenSpec(
                        model=args.model,
                        m=m,
                        n=n,
                        delta=delta,
                        d1=args.d1,
                        d2=args.d2,
                        d3=args.d3,
                        d4=args.d4,
                        mu=args.mu,
                        nu=args.nu,
                        seed=args.seed_base + offset,
                    )
                )
    plan = ExperimentPlan(
        specs=tuple(specs),
        methods=args.methods,
        exact_rows=args.exact_rows,
        exact_cols=args.exact_cols,
        node_budget=args.node_budget,
        split_effort=args.split_effort,
    )
    report = run_experiment(plan, csv_path=args.csv, json_path=args.json)
    print(f"instances {len(report.records)}")
    print(f"csv {args.csv}")
    print(f"json {args.json}")
    if args.figures:
        from .plots import render_report_figures

        csv_path = Path(args.csv)
        written = render_report_figures(report, csv_path.parent, stem=csv_path.stem)
        print("figures " + " ".join(str(p) for p in written))
    errors = sum(1 for rec in report.records if rec["error"])
    if errors:
        print(f"instance_errors {errors}")
    print(f"violations {len(report.violations)}")
    if report.violations:
        print(
            "error: sound bound below a proved optimum: "
            + "; ".join(f"record {i} column {col}" for i, col in report.violations),
            file=sys.stderr,
        )
        return 5
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="scpbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, formats=("text", "json")):
        p.add_argument("-i", "--input", default="-", help="matrix file, '-' for stdin")
        p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("bound", help="certified cover-size bounds from row statistics")
    add_common(p)
    p.add_argument(
        "--method",
        choices=("first-moment", "hypergeometric", "homogeneous", "bonferroni", "all"),
        default="all",
    )
    p.add_argument("--max-rows", type=int, default=DEFAULT_ROW_CAP, help="bonferroni row cap")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("refine", help="pair/triple overlap refinement of the union bound")
    add_common(p)
    p.add_argument("--k", type=int, default=None, help="evaluate the condition at one k")
    p.add_argument("--max-rows", type=int, default=DEFAULT_ROW_CAP)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("decompose", help="two-block split measurement and bound")
    add_common(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--split", type=_split_arg, default=None, metavar="R,C")
    group.add_argument("--search", action="store_true")
    p.add_argument("--effort", type=int, default=10_000, help="search probe budget")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("solve", help="greedy or exact cover construction")
    add_common(p)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--model", choices=("constant-density", "karp", "planted"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--d1", type=float, default=0.0)
    p.add_argument("--d2", type=float, default=0.0)
    p.add_argument("--d3", type=float, default=0.0)
    p.add_argument("--d4", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--fmt", choices=("dense", "sparse"), default="dense")
    p.add_argument("-o", "--output", default="-", help="output file, '-' for stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("experiment", help="batch bounds-vs-solvers report")
    p.add_argument("--model", choices=("constant-density", "karp", "planted"), default="constant-density")
    p.add_argument("--size", type=_size_arg, action="append", required=True, metavar="MxN")
    p.add_argument("--delta", type=float, action="append")
    p.add_argument("--d1", type=float, default=0.0)
    p.add_argument("--d2", type=float, default=0.0)
    p.add_argument("--d3", type=float, default=0.0)
    p.add_argument("--d4", type=float, default=0.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--nu", type=float, default=0.0)
    p.add_argument("--seeds", type=int, default=1, help="instances per (size, delta)")
    p.add_argument("--seed-base", type=int, default=0)
    p.add_argument("--methods", type=_methods_arg, default=DEFAULT_METHODS)
    p.add_argument("--exact-rows", type=int, default=16)
    p.add_argument("--exact-cols", type=int, default=20)
    p.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--split-effort", type=int, default=2000)
    p.add_argument("--csv", default="report.csv")
    p.add_argument("--json", default="report.json")
    p.add_argument("--no-figures", dest="figures", action="store_false")
    p.set_defaults(func=cmd_experiment, figures=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InfeasibleInstanceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (RowLimitError, DecompositionOrderingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
