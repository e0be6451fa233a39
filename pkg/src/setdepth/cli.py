"""Batch command-line front door.

Subcommands: depth, rank, hausdorff, median, properties, consistency.
Inputs are JSON bodies/distributions (or an ``a,b`` sample CSV); outputs
are deterministic JSON or CSV, with optional matplotlib figures rendered
next to them via ``--plot``.

Exit codes: 0 success (a failed axiom is a finding, not an error),
2 validation problem, 3 computation problem.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from .depth import DepthConfig, contour_membership, depth, rank, tukey_median_1d
from .distribution import DiscreteSetDistribution
from .geometry import NeedsSamplingError, hausdorff
from .properties import (
    MUTANTS,
    SuiteConfig,
    SuiteResult,
    consistency_experiment,
    convergence_table_rows,
    run_suite,
    tukey_under_test,
)
from .serialize import (
    SchemaError,
    body_to_dict,
    depth_report_to_dict,
    load_body,
    load_dist,
    load_sample_csv,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_COMPUTATION = 3


def _writer_to_text(write_rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    write_rows(w)
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _load_distribution(args) -> DiscreteSetDistribution:
    if bool(args.dist) == bool(args.sample_csv):
        raise SchemaError("exactly one of --dist or --sample-csv is required")
    if args.dist:
        return load_dist(args.dist)
    return load_sample_csv(args.sample_csv)


def _depth_config(args) -> DepthConfig:
    return DepthConfig(method=args.method, direction_budget=args.m, seed=args.seed)


def _direction_cell(u) -> str:
    return " ".join(str(c) for c in u.coords)


def cmd_depth(args) -> int:
    body = load_body(args.body)
    dist = _load_distribution(args)
    config = _depth_config(args)
    report = depth(body, dist, config)
    payload = depth_report_to_dict(report)
    payload["command"] = "depth"
    payload["seed"] = args.seed
    if args.alpha is not None:
        payload["alpha"] = args.alpha
        payload["in_contour"] = contour_membership(body, dist, args.alpha, config)
    if args.format == "json":
        _emit(_json_text(payload), args.out)
    else:
        def rows(w):
            header = ["value", "witness_direction", "witness_side", "method",
                      "directions_used", "seed"]
            row = [float(report.value), _direction_cell(report.witness_direction),
                   report.witness_side, report.method, report.directions_used, args.seed]
            if args.alpha is not None:
                header += ["alpha", "in_contour"]
                row += [args.alpha, payload["in_contour"]]
            w.writerow(header)
            w.writerow(row)
        _emit(_writer_to_text(rows), args.out)
    return EXIT_OK


def cmd_rank(args) -> int:
    if not args.body:
        raise SchemaError("rank needs at least one --body")
    bodies = [load_body(p) for p in args.body]
    dist = _load_distribution(args)
    ranked = rank(bodies, dist, _depth_config(args))
    by_identity = {id(b): p for b, p in zip(bodies, args.body)}
    rows = [
        {
            "id": by_identity[id(b)],
            "value": float(r.value),
            "witness_direction": _direction_cell(r.witness_direction),
            "witness_side": r.witness_side,
            "method": r.method,
            "directions_used": r.directions_used,
        }
        for b, r in ranked
    ]
    if args.plot:
        from . import plots

        plots.plot_rank(rows, args.plot)
    if args.format == "json":
        _emit(_json_text({"command": "rank", "seed": args.seed, "ranking": rows}), args.out)
    else:
        def write(w):
            w.writerow(["id", "value", "witness_direction", "witness_side",
                        "method", "directions_used", "seed"])
            for r in rows:
                w.writerow([r["id"], r["value"], r["witness_direction"],
                            r["witness_side"], r["method"], r["directions_used"], args.seed])
        _emit(_writer_to_text(write), args.out)
    return EXIT_OK


def cmd_hausdorff(args) -> int:
    if len(args.body) != 2:
        raise SchemaError("hausdorff needs exactly two --body arguments")
    a, b = (load_body(p) for p in args.body)
    result = hausdorff(a, b)
    if args.format == "json":
        payload = {
            "command": "hausdorff",
            "value": result.value,
            "method": result.method,
            "grid_size": result.grid_size,
        }
        _emit(_json_text(payload), args.out)
    else:
        def write(w):
            w.writerow(["value", "method", "grid_size"])
            w.writerow([result.value, result.method,
                        "" if result.grid_size is None else result.grid_size])
        _emit(_writer_to_text(write), args.out)
    return EXIT_OK


def cmd_median(args) -> int:
    dist = _load_distribution(args)
    med = tukey_median_1d(dist)
    # plain body JSON so the output can feed straight back into --body
    _emit(_json_text(body_to_dict(med)), args.out)
    return EXIT_OK


def _suite_config(args) -> SuiteConfig:
    if args.suite is None:
        return SuiteConfig(seed=args.seed)
    try:
        with open(args.suite, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise SchemaError(f"{args.suite}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{args.suite}: malformed JSON ({exc})") from exc
    if not isinstance(raw, dict):
        raise SchemaError(f"{args.suite}: expected a JSON object")
    known = {
        "seed": int, "trials": int, "epsilon": float, "p2_probes": int,
        "p7_trials": int, "scenarios": list, "n_grid": list,
    }
    kwargs = {}
    for key, value in raw.items():
        if key not in known:
            raise SchemaError(f"suite.{key}: unknown field")
        if key in ("scenarios", "n_grid"):
            if not isinstance(value, list) or not value:
                raise SchemaError(f"suite.{key}: expected a nonempty list")
            kwargs[key] = tuple(str(v) for v in value) if key == "scenarios" else tuple(
                int(v) for v in value
            )
        else:
            kwargs[key] = known[key](value)
    return SuiteConfig(**kwargs)


def _suite_to_dict(result: SuiteResult) -> dict:
    return {
        "command": "properties",
        "evaluator": result.evaluator,
        "seed": result.config.seed,
        "labels": list(result.labels),
        "config": {
            "trials": result.config.trials,
            "scenarios": list(result.config.scenarios),
            "epsilon": result.config.epsilon,
            "n_grid": list(result.config.n_grid),
        },
        "reports": {
            pid: {
                "verdict": rep.verdict,
                "trials": rep.trials,
                "seed": rep.seed,
                "counterexample": rep.counterexample,
                "details": rep.details,
            }
            for pid, rep in result.reports.items()
        },
    }


def cmd_properties(args) -> int:
    config = _suite_config(args)
    if args.evaluator == "tukey":
        depth_fn = tukey_under_test()
    elif args.evaluator in MUTANTS:
        depth_fn = MUTANTS[args.evaluator]()
    else:
        raise SchemaError(
            f"--evaluator: expected tukey or one of {sorted(MUTANTS)}, got {args.evaluator!r}"
        )
    result = run_suite(depth_fn, config)
    if args.plot:
        from . import plots

        plots.plot_property_suite(result, args.plot)
    if args.format == "json":
        _emit(_json_text(_suite_to_dict(result)), args.out)
    else:
        def write(w):
            w.writerow(["property", "verdict", "trials", "seed"])
            for pid, rep in result.reports.items():
                w.writerow([pid, rep.verdict, rep.trials, rep.seed])
            for label in result.labels:
                w.writerow(["label", label, "", ""])
        _emit(_writer_to_text(write), args.out)
    return EXIT_OK


def cmd_consistency(args) -> int:
    dist = _load_distribution(args)
    if args.epsilon <= 0:
        raise SchemaError(f"--epsilon: must be > 0, got {args.epsilon} (bound degenerate)")
    bodies = [load_body(p) for p in args.body] if args.body else list(dist.atoms)
    table = consistency_experiment(dist, bodies, args.n_grid, args.epsilon, args.seed)
    if args.plot:
        from . import plots

        plots.plot_convergence(table, args.plot)
    if args.format == "json":
        payload = {
            "command": "consistency",
            "seed": args.seed,
            "epsilon": args.epsilon,
            "rows": convergence_table_rows(table),
        }
        _emit(_json_text(payload), args.out)
    else:
        def write(w):
            w.writerow(["n", "sup_error", "dkw_bound", "seed"])
            for r in table.rows:
                w.writerow([r.n, r.sup_error, r.dkw_bound, r.seed])
        _emit(_writer_to_text(write), args.out)
    return EXIT_OK


def _parse_n_grid(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise SchemaError(f"--n-grid: expected comma-separated integers, got {text!r}") from exc
    if not values or any(v < 1 for v in values):
        raise SchemaError(f"--n-grid: sample sizes must be >= 1, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="setdepth",
        description="Tukey depth of compact convex sets with respect to set-valued distributions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, default_format="json"):
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=["json", "csv"], default=default_format)

    def add_dist(p):
        p.add_argument("--dist", help="distribution JSON file")
        p.add_argument("--sample-csv", help="interval sample CSV (header a,b)")

    def add_config(p):
        p.add_argument("--method", choices=["auto", "exact", "sampled"], default="auto")
        p.add_argument("--m", type=int, default=1024, help="direction budget for sampling")
        p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("depth", help="depth of one body")
    p.add_argument("--body", required=True)
    add_dist(p)
    add_config(p)
    p.add_argument("--alpha", type=float, help="also report membership of the alpha-contour")
    add_io(p)
    p.set_defaults(func=cmd_depth)

    p = sub.add_parser("rank", help="order bodies by depth")
    p.add_argument("--body", action="append", default=[], help="body JSON file (repeatable)")
    add_dist(p)
    add_config(p)
    p.add_argument("--plot", help="render a bar chart to this file")
    add_io(p, default_format="csv")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("hausdorff", help="Hausdorff distance between two bodies")
    p.add_argument("--body", action="append", default=[], help="body JSON file (give twice)")
    add_io(p)
    p.set_defaults(func=cmd_hausdorff)

    p = sub.add_parser("median", help="1-d Tukey median interval")
    add_dist(p)
    add_io(p)
    p.set_defaults(func=cmd_median)

    p = sub.add_parser("properties", help="run the axiom suite P1-P7 and classify")
    p.add_argument("--suite", help="suite config JSON")
    p.add_argument("--evaluator", default="tukey")
    p.add_argument("--seed", type=int, default=0, help="seed when no suite file is given")
    p.add_argument("--plot", help="render a verdict chart to this file")
    add_io(p)
    p.set_defaults(func=cmd_properties)

    p = sub.add_parser("consistency", help="sample-vs-population depth convergence table")
    add_dist(p)
    p.add_argument("--body", action="append", default=[],
                   help="test body JSON (repeatable; default: the atoms)")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--n-grid", type=_parse_n_grid, default=(100, 1000, 10000))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--plot", help="render the convergence figure to this file")
    add_io(p, default_format="csv")
    p.set_defaults(func=cmd_consistency)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NeedsSamplingError as exc:
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION
    except Exception as exc:  # pragma: no cover - defensive catch-all
        print(f"computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTATION


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
