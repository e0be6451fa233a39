"""JSON and CSV schemas for bodies, distributions, samples, and reports.

Body JSON:
    {"type": "interval", "a": 1.0, "b": 2.0}
    {"type": "box", "min": [...], "max": [...]}
    {"type": "polytope", "vertices": [[x, y], ...]}
    {"type": "ball", "center": [...], "radius": r}

Distribution JSON:
    {"dimension": p, "atoms": [{"body": <body>, "prob": w}, ...]}

Sample CSV (p = 1): header ``a,b``, one interval per row, imported as the
equal-weight empirical distribution.
"""

from __future__ import annotations

import csv
import json
from fractions import Fraction
from typing import IO

from .depth import DepthReport
from .distribution import DiscreteSetDistribution, make_discrete
from .geometry import Ball, Box, ConvexBody, Interval, VPolytope


class SchemaError(ValueError):
    """Input file does not match the documented schema; the message names
    the offending field."""


def _require(d: dict, key: str, ctx: str):
    if key not in d:
        raise SchemaError(f"{ctx}.{key}: missing required field")
    return d[key]


def _number(value, ctx: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{ctx}: expected a number, got {value!r}")
    return float(value)


def _point(value, ctx: str) -> tuple[float, ...]:
    if not isinstance(value, (list, tuple)) or not value:
        raise SchemaError(f"{ctx}: expected a nonempty list of numbers")
    return tuple(_number(x, f"{ctx}[{i}]") for i, x in enumerate(value))


def body_from_dict(d: dict, ctx: str = "body") -> ConvexBody:
    if not isinstance(d, dict):
        raise SchemaError(f"{ctx}: expected an object, got {type(d).__name__}")
    kind = _require(d, "type", ctx)
    try:
        if kind == "interval":
            return Interval(_number(_require(d, "a", ctx), f"{ctx}.a"),
                            _number(_require(d, "b", ctx), f"{ctx}.b"))
        if kind == "box":
            return Box(_point(_require(d, "min", ctx), f"{ctx}.min"),
                       _point(_require(d, "max", ctx), f"{ctx}.max"))
        if kind == "polytope":
            verts = _require(d, "vertices", ctx)
            if not isinstance(verts, (list, tuple)) or not verts:
                raise SchemaError(f"{ctx}.vertices: expected a nonempty list of points")
            return VPolytope([_point(v, f"{ctx}.vertices[{i}]") for i, v in enumerate(verts)])
        if kind == "ball":
            return Ball(_point(_require(d, "center", ctx), f"{ctx}.center"),
                        _number(_require(d, "radius", ctx), f"{ctx}.radius"))
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(f"{ctx}: {exc}") from exc
    raise SchemaError(f"{ctx}.type: expected interval|box|polytope|ball, got {kind!r}")


def body_to_dict(body: ConvexBody) -> dict:
    if isinstance(body, Interval):
        return {"type": "interval", "a": body.a, "b": body.b}
    if isinstance(body, Box):
        return {"type": "box", "min": list(body.min), "max": list(body.max)}
    if isinstance(body, VPolytope):
        return {"type": "polytope", "vertices": [list(v) for v in body.verts]}
    if isinstance(body, Ball):
        return {"type": "ball", "center": list(body.center), "radius": body.radius}
    raise SchemaError(
        f"composite body {type(body).__name__} has no JSON form; "
        "decompose it into interval/box/polytope/ball parts"
    )


def dist_from_dict(d: dict, ctx: str = "distribution") -> DiscreteSetDistribution:
    if not isinstance(d, dict):
        raise SchemaError(f"{ctx}: expected an object, got {type(d).__name__}")
    atoms_spec = _require(d, "atoms", ctx)
    if not isinstance(atoms_spec, (list, tuple)) or not atoms_spec:
        raise SchemaError(f"{ctx}.atoms: expected a nonempty list")
    atoms, weights = [], []
    for i, entry in enumerate(atoms_spec):
        actx = f"{ctx}.atoms[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{actx}: expected an object")
        atoms.append(body_from_dict(_require(entry, "body", actx), f"{actx}.body"))
        prob = entry.get("prob")
        if prob is None:
            # allow exact rationals as [num, den]
            exact = entry.get("prob_exact")
            if exact is None:
                raise SchemaError(f"{actx}.prob: missing required field")
            weights.append(Fraction(int(exact[0]), int(exact[1])))
        else:
            weights.append(_number(prob, f"{actx}.prob"))
    try:
        dist = make_discrete(atoms, weights)
    except ValueError as exc:
        raise SchemaError(f"{ctx}: {exc}") from exc
    declared = d.get("dimension")
    if declared is not None and int(declared) != dist.dim:
        raise SchemaError(f"{ctx}.dimension: declared {declared} but atoms have dimension {dist.dim}")
    return dist


def dist_to_dict(dist: DiscreteSetDistribution, exact: bool = False) -> dict:
    atoms = []
    for body, w in zip(dist.atoms, dist.weights):
        entry = {"body": body_to_dict(body), "prob": float(w)}
        if exact:
            entry["prob_exact"] = [w.numerator, w.denominator]
        atoms.append(entry)
    return {"dimension": dist.dim, "atoms": atoms}


def load_body(path: str) -> ConvexBody:
    return body_from_dict(_load_json(path), ctx=path)


def load_dist(path: str) -> DiscreteSetDistribution:
    return dist_from_dict(_load_json(path), ctx=path)


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc})") from exc


def load_sample_csv(path: str) -> DiscreteSetDistribution:
    """Equal-weight interval distribution from an ``a,b`` CSV file."""
    atoms: list[Interval] = []
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.DictReader(fh)
            if reader.fieldnames is None or [f.strip() for f in reader.fieldnames] != ["a", "b"]:
                raise SchemaError(f"{path}: expected CSV header 'a,b', got {reader.fieldnames}")
            for i, row in enumerate(reader):
                try:
                    atoms.append(Interval(float(row["a"]), float(row["b"])))
                except (TypeError, ValueError) as exc:
                    raise SchemaError(f"{path}: row {i + 1}: {exc}") from exc
    except OSError as exc:
        raise SchemaError(f"{path}: cannot read file ({exc})") from exc
    if not atoms:
        raise SchemaError(f"{path}: no data rows")
    return make_discrete(atoms)


def depth_report_to_dict(report: DepthReport) -> dict:
    return {
        "value": float(report.value),
        "value_exact": [report.value.numerator, report.value.denominator],
        "witness": {
            "direction": list(report.witness_direction.coords),
            "side": report.witness_side,
        },
        "method": report.method,
        "directions_used": report.directions_used,
    }


def dump_json(obj, fh: IO[str]) -> None:
    """Deterministic JSON: sorted keys, two-space indent, trailing newline."""
    json.dump(obj, fh, sort_keys=True, indent=2)
    fh.write("\n")
