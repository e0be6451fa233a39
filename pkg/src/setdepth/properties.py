"""Mechanical verification of the depth axioms P1-P7 on scenario suites.

Each runner exercises one axiom against a pluggable depth evaluator and
returns a PropertyReport whose failure payload is self-certifying: it holds
everything needed to recompute the violation.  P5 and P6 are limit
statements, so their runners check finite necessary conditions (reported
horizons, DKW envelopes) and never claim proof.  Deliberately broken
"mutant" evaluators are part of the surface so that pass verdicts stay
falsifiable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .depth import (
    DEFAULT_CONFIG,
    DepthConfig,
    depth,
    depth_sampled,
    direction_set,
    tukey_median_1d,
)
from .distribution import (
    DiscreteSetDistribution,
    is_compact_symmetric,
    make_discrete,
    map_distribution,
    sample,
    support_law,
    two_atom_symmetric_center,
)
from .geometry import (
    AffineMap,
    Box,
    ConvexBody,
    Interval,
    UnitDirection,
    VPolytope,
    affine_image,
    convex_combination,
    convex_hull_2d,
    hausdorff,
    minkowski_sum,
    scale,
    singleton,
    sphere_map,
    support,
)
from .serialize import body_from_dict, body_to_dict, dist_from_dict, dist_to_dict

PROPERTY_IDS = ("P1", "P2", "P3a", "P3b", "P4a", "P4b", "P5", "P6", "P7")
LAMBDA_GRID = tuple(k / 10 for k in range(11))


@dataclass(frozen=True)
class DepthFunctionUnderTest:
    """A depth evaluator the harness can probe.

    ``evaluate`` maps (body, distribution) to a value in [0, 1].  ``exact``
    marks evaluators whose values are exact rationals; those are compared
    with zero tolerance.  ``evaluate_at`` is the optional direction-aware
    form used by the affine-invariance runner to pair a sampled estimator
    with the image of its direction set.
    """

    name: str
    evaluate: Callable[[ConvexBody, DiscreteSetDistribution], Fraction | float]
    exact: bool = True
    evaluate_at: Callable[..., Fraction | float] | None = None

    @property
    def tolerance(self) -> float:
        return 0.0 if self.exact else 1e-9


@dataclass(frozen=True)
class PropertyReport:
    """Verdict and evidence trail for one axiom run."""

    property_id: str
    verdict: str  # pass | fail | not-applicable
    trials: int
    seed: int
    counterexample: dict | None = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.property_id not in PROPERTY_IDS:
            raise ValueError(f"unknown property id {self.property_id!r}")
        if self.verdict not in ("pass", "fail", "not-applicable"):
            raise ValueError(f"unknown verdict {self.verdict!r}")


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    sup_error: float
    dkw_bound: float
    seed: int


@dataclass(frozen=True)
class ConvergenceTable:
    """Sample-vs-population depth deviations against the 4 exp(-2 eps^2 n)
    envelope."""

    rows: tuple[ConvergenceRow, ...]
    epsilon: float

    def __post_init__(self):
        if any(r.sup_error < 0 for r in self.rows):
            raise ValueError("sup_error must be nonnegative")
        if list(r.n for r in self.rows) != sorted(r.n for r in self.rows):
            raise ValueError("rows must be sorted by n")


@dataclass(frozen=True)
class Scenario:
    """One distribution plus the bodies the runners play against it.

    ``maximizer`` is a certified deepest body (the 1-d median interval or a
    symmetric two-atom center); ``symmetric_center`` is set only when the
    distribution is compact-symmetric about it by construction.
    """

    id: str
    dist: DiscreteSetDistribution
    probes: tuple[ConvexBody, ...]
    maximizer: ConvexBody | None = None
    symmetric_center: ConvexBody | None = None

    @property
    def dim(self) -> int:
        return self.dist.dim


def tukey_under_test(config: DepthConfig = DEFAULT_CONFIG) -> DepthFunctionUnderTest:
    """The Tukey depth engine wrapped for the harness (exact engines)."""

    def evaluate(body, dist):
        return depth(body, dist, config).value

    def evaluate_at(body, dist, dirs):
        return depth_sampled(body, dist, dirs, config.tolerance).value

    return DepthFunctionUnderTest("tukey", evaluate, exact=True, evaluate_at=evaluate_at)


def tukey_sampled_under_test(m: int = 256, seed: int = 0) -> DepthFunctionUnderTest:
    """Direction-sampled Tukey depth; inexact, but pairable through
    evaluate_at for count-exact affine comparisons."""

    def evaluate(body, dist):
        dirs = direction_set(dist.dim, _strategy_for(dist.dim), m, seed)
        return depth_sampled(body, dist, dirs).value

    def evaluate_at(body, dist, dirs):
        return depth_sampled(body, dist, dirs).value

    return DepthFunctionUnderTest(
        f"tukey-sampled-{m}", evaluate, exact=False, evaluate_at=evaluate_at
    )


def _strategy_for(p: int) -> str:
    if p <= 2:
        return "grid2d" if p == 2 else "axes"
    return "lowdisc" if p == 3 else "random"


# ---------------------------------------------------------------------------
# scenario construction


def counterexample_scenario() -> Scenario:
    """The two-interval law whose depth ordering breaks the metric
    monotonicity axiom: the deepest set is [1,2], yet [3,5] sits metrically
    between [1,2] and [2,7] with strictly smaller depth."""
    dist = make_discrete(
        [Interval(1, 2), Interval(2, 7)], [Fraction(3, 4), Fraction(1, 4)]
    )
    return Scenario(
        id="counterexample",
        dist=dist,
        probes=(Interval(1, 2), Interval(2, 7), Interval(3, 5)),
        maximizer=Interval(1, 2),
    )


def _random_interval(rng, lo=-12, hi=12) -> Interval:
    a, b = sorted(rng.integers(lo, hi + 1, size=2))
    return Interval(float(a), float(b))


def _random_weights(rng, k: int) -> list[Fraction]:
    parts = rng.integers(1, 10, size=k)
    total = int(parts.sum())
    return [Fraction(int(p), total) for p in parts]


def _random_polygon(rng, lo=-8, hi=8, npts=None) -> VPolytope:
    n = int(npts if npts is not None else rng.integers(3, 7))
    pts = rng.integers(lo, hi + 1, size=(n, 2)).astype(float)
    hull = convex_hull_2d([tuple(p) for p in pts])
    return VPolytope(hull)


def interval_scenario(seed: int, ident: str) -> Scenario:
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 6))
    atoms = [_random_interval(rng) for _ in range(k)]
    dist = make_discrete(atoms, _random_weights(rng, k))
    probes = tuple(_random_interval(rng) for _ in range(6)) + (
        Interval(30.0, 32.0),  # far probe, depth 0
    )
    return Scenario(ident, dist, probes, maximizer=tukey_median_1d(dist))


def symmetric_pair_scenario(seed: int, ident: str, dim: int) -> Scenario:
    rng = np.random.default_rng(seed)
    if dim == 1:
        k1, k2 = _random_interval(rng), _random_interval(rng)
        probes = tuple(_random_interval(rng) for _ in range(6))
    else:
        k1, k2 = _random_polygon(rng), _random_polygon(rng)
        probes = tuple(_random_polygon(rng) for _ in range(6))
    dist = make_discrete([k1, k2])
    center = two_atom_symmetric_center(k1, k2)
    return Scenario(ident, dist, probes, maximizer=center, symmetric_center=center)


def polygon_scenario(seed: int, ident: str) -> Scenario:
    rng = np.random.default_rng(seed)
    k = int(rng.integers(2, 5))
    atoms = [_random_polygon(rng) for _ in range(k)]
    dist = make_discrete(atoms, _random_weights(rng, k))
    probes = tuple(_random_polygon(rng) for _ in range(5)) + (
        singleton((40.0, 40.0)),
    )
    return Scenario(ident, dist, probes)


SCENARIO_FAMILIES = ("counterexample", "intervals-1d", "symmetric-1d", "polygons-2d", "symmetric-2d")


def build_scenarios(names: Sequence[str], seed: int, per_family: int = 4) -> list[Scenario]:
    """Instantiate the named scenario families, fully seeded."""
    out: list[Scenario] = []
    for name in names:
        if name == "counterexample":
            out.append(counterexample_scenario())
        elif name == "intervals-1d":
            out.extend(
                interval_scenario(seed * 1000 + i, f"{name}/{i}") for i in range(per_family)
            )
        elif name == "symmetric-1d":
            out.extend(
                symmetric_pair_scenario(seed * 1000 + 100 + i, f"{name}/{i}", 1)
                for i in range(per_family)
            )
        elif name == "polygons-2d":
            out.extend(
                polygon_scenario(seed * 1000 + 200 + i, f"{name}/{i}") for i in range(per_family)
            )
        elif name == "symmetric-2d":
            out.extend(
                symmetric_pair_scenario(seed * 1000 + 300 + i, f"{name}/{i}", 2)
                for i in range(per_family)
            )
        else:
            raise ValueError(f"unknown scenario family {name!r}")
    if not out:
        raise ValueError("no scenarios configured")
    return out


# ---------------------------------------------------------------------------
# shared helpers


def _values_exceed(a, b, tol: float) -> bool:
    """True when a > b beyond the comparison tolerance."""
    if tol == 0.0 and isinstance(a, Fraction) and isinstance(b, Fraction):
        return a > b
    return float(a) > float(b) + tol


def _value_payload(v) -> list | float:
    if isinstance(v, Fraction):
        return [v.numerator, v.denominator]
    return float(v)


def _random_matrix(rng, p: int, cond_max: float = 1e3) -> tuple[tuple[float, ...], ...]:
    """Integer nonsingular matrix with bounded condition number; integer
    entries keep transformed scenario data exactly representable."""
    while True:
        m = rng.integers(-3, 4, size=(p, p)).astype(float)
        det = abs(np.linalg.det(m))
        if det > 0.5 and np.linalg.cond(m) <= cond_max:
            return tuple(tuple(row) for row in m)


def _random_translate(rng, p: int) -> ConvexBody:
    if p == 1:
        return _random_interval(rng, -6, 6)
    kind = rng.integers(0, 3)
    if kind == 0:
        return singleton(tuple(float(x) for x in rng.integers(-6, 7, size=p)))
    if kind == 1 and p == 2:
        return _random_polygon(rng, -4, 4)
    lo = rng.integers(-5, 3, size=p).astype(float)
    hi = lo + rng.integers(0, 4, size=p)
    return Box(tuple(lo), tuple(hi))


# ---------------------------------------------------------------------------
# P1: affine invariance


def run_p1(
    depth_fn: DepthFunctionUnderTest,
    scenarios: Sequence[Scenario],
    trials: int = 200,
    seed: int = 0,
) -> PropertyReport:
    """D(MK + L; M Gamma + L) must equal D(K; Gamma) for nonsingular M."""
    rng = np.random.default_rng(seed)
    for t in range(trials):
        sc = scenarios[t % len(scenarios)]
        p = sc.dim
        body = sc.probes[int(rng.integers(0, len(sc.probes)))]
        matrix = _random_matrix(rng, p)
        translate = _random_translate(rng, p)
        t_map = AffineMap(matrix, translate)
        moved_body = affine_image(t_map, body)
        moved_dist = map_distribution(sc.dist, lambda a: affine_image(t_map, a))
        if depth_fn.evaluate_at is not None and not depth_fn.exact:
            dirs0 = direction_set(p, _strategy_for(p), 256, int(rng.integers(0, 2**31)))
            inv = np.linalg.inv(np.asarray(matrix))
            dirs1 = tuple(sphere_map(inv, u) for u in dirs0)
            d0 = depth_fn.evaluate_at(body, sc.dist, dirs0)
            d1 = depth_fn.evaluate_at(moved_body, moved_dist, dirs1)
        else:
            d0 = depth_fn.evaluate(body, sc.dist)
            d1 = depth_fn.evaluate(moved_body, moved_dist)
        if not (math.isfinite(float(d0)) and math.isfinite(float(d1))):
            mismatch = True
        elif depth_fn.exact and isinstance(d0, Fraction) and isinstance(d1, Fraction):
            mismatch = d0 != d1
        else:
            mismatch = abs(float(d0) - float(d1)) > max(depth_fn.tolerance, 1e-9)
        if mismatch:
            return PropertyReport(
                "P1", "fail", t + 1, seed,
                counterexample={
                    "scenario": sc.id,
                    "dist": dist_to_dict(sc.dist, exact=True),
                    "body": body_to_dict(body),
                    "matrix": [list(r) for r in matrix],
                    "translate": body_to_dict(translate),
                    "depth_original": _value_payload(d0),
                    "depth_transformed": _value_payload(d1),
                },
            )
    return PropertyReport("P1", "pass", trials, seed)


# ---------------------------------------------------------------------------
# P2: maximality at the center of symmetry


def _probe_pool(rng, sc: Scenario, count: int) -> list[ConvexBody]:
    """Random candidate bodies around a scenario: fresh draws plus scaled
    and shifted variants of its probes and atoms."""
    base = list(sc.probes) + list(sc.dist.atoms)
    out: list[ConvexBody] = []
    while len(out) < count:
        roll = rng.integers(0, 3)
        if roll == 0:
            out.append(
                _random_interval(rng) if sc.dim == 1 else _random_polygon(rng)
            )
        elif roll == 1:
            b = base[int(rng.integers(0, len(base)))]
            shift = tuple(float(x) for x in rng.integers(-5, 6, size=sc.dim))
            out.append(minkowski_sum(b, singleton(shift)))
        else:
            b = base[int(rng.integers(0, len(base)))]
            out.append(scale(b, float(rng.choice([0.5, 1.5, 2.0]))))
    return out


def run_p2(
    depth_fn: DepthFunctionUnderTest,
    scenarios: Sequence[Scenario],
    probes_per_scenario: int = 500,
    seed: int = 0,
) -> PropertyReport:
    """On compact-symmetric distributions the certified center must reach
    the supremum; every probe is checked against it."""
    rng = np.random.default_rng(seed)
    applicable = [sc for sc in scenarios if sc.symmetric_center is not None]
    if not applicable:
        return PropertyReport("P2", "not-applicable", 0, seed)
    trials = 0
    for sc in applicable:
        center = sc.symmetric_center
        check_dirs = (
            (UnitDirection((1.0,)), UnitDirection((-1.0,)))
            if sc.dim == 1
            else direction_set(sc.dim, _strategy_for(sc.dim), 64, seed)
        )
        if not is_compact_symmetric(sc.dist, center, check_dirs):
            # construction should make this impossible; bail as untestable
            return PropertyReport(
                "P2", "not-applicable", trials, seed,
                details={"reason": f"certificate failed on {sc.id}"},
            )
        d_center = depth_fn.evaluate(center, sc.dist)
        for probe in _probe_pool(rng, sc, probes_per_scenario):
            trials += 1
            d_probe = depth_fn.evaluate(probe, sc.dist)
            if _values_exceed(d_probe, d_center, depth_fn.tolerance):
                return PropertyReport(
                    "P2", "fail", trials, seed,
                    counterexample={
                        "scenario": sc.id,
                        "dist": dist_to_dict(sc.dist, exact=True),
                        "center": body_to_dict(center),
                        "probe": body_to_dict(probe),
                        "depth_center": _value_payload(d_center),
                        "depth_probe": _value_payload(d_probe),
                    },
                )
    return PropertyReport("P2", "pass", trials, seed)


# ---------------------------------------------------------------------------
# P3a: monotonicity along segments toward the deepest body


def run_p3a(
    depth_fn: DepthFunctionUnderTest,
    scenarios: Sequence[Scenario],
    trials: int = 200,
    seed: int = 0,
) -> PropertyReport:
    """D((1 - lam) K* + lam L) >= D(L) on the lambda grid, for scenarios
    with a certified maximizer K*."""
    rng = np.random.default_rng(seed)
    applicable = [sc for sc in scenarios if sc.maximizer is not None]
    if not applicable:
        return PropertyReport("P3a", "not-applicable", 0, seed)
    for t in range(trials):
        sc = applicable[t % len(applicable)]
        k_star = sc.maximizer
        probe = sc.probes[int(rng.integers(0, len(sc.probes)))]
        d_probe = depth_fn.evaluate(probe, sc.dist)
        for lam in LAMBDA_GRID:
            combo = convex_combination(k_star, probe, lam)
            d_combo = depth_fn.evaluate(combo, sc.dist)
            if _values_exceed(d_probe, d_combo, depth_fn.tolerance):
                return PropertyReport(
                    "P3a", "fail", t + 1, seed,
                    counterexample={
                        "scenario": sc.id,
                        "dist": dist_to_dict(sc.dist, exact=True),
                        "maximizer": body_to_dict(k_star),
                        "probe": body_to_dict(probe),
                        "lambda": lam,
                        "depth_probe": _value_payload(d_probe),
                        "depth_combination": _value_payload(d_combo),
                    },
                )
    return PropertyReport("P3a", "pass", trials, seed)


# ---------------------------------------------------------------------------
# P3b: monotonicity along the metric (fails for the Tukey depth)


def run_p3b(
    depth_fn: DepthFunctionUnderTest,
    scenarios: Sequence[Scenario],
    seed: int = 0,
    betweenness_tol: float = 1e-9,
) -> PropertyReport:
    """Search metric-between triples d(K*, S) = d(K*, L) + d(L, S) and
    check D(L) >= D(S).  Only exact Hausdorff values are trusted."""
    applicable = [sc for sc in scenarios if sc.maximizer is not None]
    if not applicable:
        return PropertyReport("P3b", "not-applicable", 0, seed)
    trials = 0
    for sc in applicable:
        k_star = sc.maximizer
        pool = list(sc.probes)
        for l_body in pool:
            for s_body in pool:
                if l_body == s_body:
                    continue
                d_ks = hausdorff(k_star, s_body)
                d_kl = hausdorff(k_star, l_body)
                d_ls = hausdorff(l_body, s_body)
                if "approx" in (d_ks.method, d_kl.method, d_ls.method):
                    continue
                if abs(d_ks.value - (d_kl.value + d_ls.value)) > betweenness_tol:
                    continue
                trials += 1
                d_l = depth_fn.evaluate(l_body, sc.dist)
                d_s = depth_fn.evaluate(s_body, sc.dist)
                if _values_exceed(d_s, d_l, depth_fn.tolerance):
                    return PropertyReport(
                        "P3b", "fail", trials, seed,
                        counterexample={
                            "scenario": sc.id,
                            "dist": dist_to_dict(sc.dist, exact=True),
                            "maximizer": body_to_dict(k_star),
                            "between": body_to_dict(l_body),
                            "far": body_to_dict(s_body),
                            "distances": {
                                "maximizer_far": d_ks.value,
                                "maximizer_between": d_kl.value,
                                "between_far": d_ls.value,
                            },
                            "depth_maximizer": _value_payload(
                                depth_fn.evaluate(k_star, sc.dist)
                            ),
                            "depth_between": _value_payload(d_l),
                            "depth_far": _value_payload(d_s),
                        },
                    )
    return PropertyReport("P3b", "pass", trials, seed)


# ---------------------------------------------------------------------------
# P4: vanishing at infinity


def _is_zero_body(l_body: ConvexBody, tol: float = 1e-9) -> bool:
    axes_dirs = direction_set(l_body.dim, "axes", 2 * l_body.dim)
    return all(abs(support(l_body, u)) <= tol for u in axes_dirs)


def _exit_threshold(
    body: ConvexBody,
    l_body: ConvexBody,
    dist: DiscreteSetDistribution,
    tol: float = 1e-9,
    cap: int = 10_000,
) -> int | None:
    """First n at which s_{K + nL}(u) leaves the closed range of atom
    supports at some direction u, forcing one tail probability to zero."""
    axes_dirs = direction_set(body.dim, "axes", 2 * body.dim)
    triples = []
    for u in axes_dirs:
        law = support_law(dist, u)
        triples.append(
            (support(body, u), support(l_body, u), min(law.values), max(law.values))
        )
    for n in range(1, cap + 1):
        for s_k, s_l, lo, hi in triples:
            s_n = s_k + n * s_l
            if s_n > hi + tol or s_n < lo - tol:
                return n
    return None


def run_p4(
    depth_fn: DepthFunctionUnderTest,
    scenarios: Sequence[Scenario],
    variant: str = "a",
    trials: int = 200,
    seed: int = 0,
) -> PropertyReport:
    """Vanishing at infinity.

    Variant "a" pushes K* + n L with a random nonzero L; variant "b" walks
    translates K* + n {v}, a sequence diverging in the Hausdorff metric.
    The depth must be zero at the first range-exit n and stay zero for the
    next three.
    """
    if variant not in ("a", "b"):
        raise ValueError(f"variant must be 'a' or 'b', got {variant!r}")
    rng = np.random.default_rng(seed)
    applicable = [sc for sc in scenarios if sc.maximizer is not None]
    if not applicable:
        return PropertyReport(f"P4{variant}", "not-applicable", 0, seed)
    checked = 0
    attempts = 0
    while checked < trials and attempts < 3 * trials:
        sc = applicable[attempts % len(applicable)]
        attempts += 1
        body = sc.maximizer
        if variant == "a":
            l_body = _random_translate(rng, sc.dim)
        else:
            vec = rng.integers(-4, 5, size=sc.dim).astype(float)
            if not vec.any():
                vec[int(rng.integers(0, sc.dim))] = 1.0
            l_body = singleton(tuple(vec))
        if _is_zero_body(l_body):
            continue  # precondition L != {0}
        n_star = _exit_threshold(body, l_body, sc.dist)
        if n_star is None:  # pragma: no cover - nonzero L always exits
            continue
        checked += 1
        for n in range(n_star, n_star + 4):
            shifted = minkowski_sum(body, scale(l_body, float(n)))
            d_n = depth_fn.evaluate(shifted, sc.dist)
            if _values_exceed(d_n, Fraction(0), depth_fn.tolerance):
                return PropertyReport(
                    f"P4{variant}", "fail", checked, seed,
                    counterexample={
                        "scenario": sc.id,
                        "dist": dist_to_dict(sc.dist, exact=True),
                        "body": body_to_dict(body),
                        "step": body_to_dict(l_body),
                        "n": n,
                        "depth_at_n": _value_payload(d_n),
                    },
                )
    if checked == 0:
        return PropertyReport(f"P4{variant}", "not-applicable", 0, seed)
    return PropertyReport(f"P4{variant}", "pass", checked, seed)


# ---------------------------------------------------------------------------
# P5: upper semicontinuity (finite necessary condition)


def run_p5(
    depth_fn: DepthFunctionUnderTest,
    scenarios: Sequence[Scenario],
    trials: int = 200,
    seed: int = 0,
    horizon: int = 12,
) -> PropertyReport:
    """Shrinking Minkowski perturbations K + (1/n) B must not exceed the
    depth of K in the tail; the first clean index N0 is reported.

    A finite check only: it can refute upper semicontinuity, not prove it.
    """
    rng = np.random.default_rng(seed)
    worst_n0 = 0
    tail = 4
    for t in range(trials):
        sc = scenarios[t % len(scenarios)]
        body = sc.probes[int(rng.integers(0, len(sc.probes)))]
        unit = Box((-1.0,) * sc.dim, (1.0,) * sc.dim)
        d_body = depth_fn.evaluate(body, sc.dist)
        vals = []
        for n in range(1, horizon + 1):
            perturbed = minkowski_sum(body, scale(unit, 1.0 / n))
            vals.append((n, depth_fn.evaluate(perturbed, sc.dist)))
        n0 = None
        for start in range(len(vals)):
            if all(not _values_exceed(v, d_body, depth_fn.tolerance) for _, v in vals[start:]):
                n0 = vals[start][0]
                break
        if n0 is None or n0 > horizon - tail + 1:
            bad = next(
                (n, v) for n, v in reversed(vals)
                if _values_exceed(v, d_body, depth_fn.tolerance)
            )
            return PropertyReport(
                "P5", "fail", t + 1, seed,
                counterexample={
                    "scenario": sc.id,
                    "dist": dist_to_dict(sc.dist, exact=True),
                    "body": body_to_dict(body),
                    "n": bad[0],
                    "depth_body": _value_payload(d_body),
                    "depth_perturbed": _value_payload(bad[1]),
                },
            )
        worst_n0 = max(worst_n0, n0)
    return PropertyReport("P5", "pass", trials, seed, details={"max_n0": worst_n0})


# ---------------------------------------------------------------------------
# P6: consistency of the sample version


def consistency_experiment(
    dist: DiscreteSetDistribution,
    bodies: Sequence[ConvexBody],
    n_grid: Sequence[int],
    epsilon: float,
    seed: int,
    evaluator: Callable[[ConvexBody, DiscreteSetDistribution], Fraction | float] | None = None,
) -> ConvergenceTable:
    """For each sample size n: draw an i.i.d. sample, compare population
    and sample depth over the test bodies, and log the DKW envelope
    4 exp(-2 eps^2 n)."""
    if epsilon <= 0:
        raise ValueError(f"epsilon must be > 0, got {epsilon}")
    if not bodies:
        raise ValueError("need at least one test body")
    if evaluator is None:
        if dist.dim > 2 or (dist.dim == 2 and not dist.is_polytopal):
            raise ValueError("no exact engine for this distribution; pass an evaluator")
        evaluator = lambda b, d: depth(b, d).value
    population = [evaluator(b, dist) for b in bodies]
    rows = []
    for i, n in enumerate(sorted(n_grid)):
        row_seed = (seed * 1_000_003 + n) % (2**63)
        empirical = sample(dist, n, row_seed)
        sup_err = max(
            abs(float(p) - float(evaluator(b, empirical)))
            for p, b in zip(population, bodies)
        )
        rows.append(ConvergenceRow(n, sup_err, 4.0 * math.exp(-2.0 * epsilon**2 * n), seed))
    return ConvergenceTable(tuple(rows), epsilon)


def run_p6(
    depth_fn: DepthFunctionUnderTest,
    scenario: Scenario,
    n_grid: Sequence[int] = (100, 1000, 10000),
    epsilon: float = 0.05,
    seed: int = 0,
    binding_level: float = 0.05,
) -> PropertyReport:
    """Envelope check: wherever the DKW bound makes a deviation beyond
    epsilon implausible (bound <= binding_level), require sup_error <=
    epsilon."""
    table = consistency_experiment(
        scenario.dist,
        list(scenario.probes) + list(scenario.dist.atoms),
        n_grid,
        epsilon,
        seed,
        evaluator=depth_fn.evaluate,
    )
    for row in table.rows:
        if row.dkw_bound <= binding_level and row.sup_error > epsilon:
            return PropertyReport(
                "P6", "fail", len(table.rows), seed,
                counterexample={
                    "scenario": scenario.id,
                    "n": row.n,
                    "sup_error": row.sup_error,
                    "epsilon": epsilon,
                    "dkw_bound": row.dkw_bound,
                },
                details={"table": convergence_table_rows(table)},
            )
    return PropertyReport(
        "P6", "pass", len(table.rows), seed,
        details={"table": convergence_table_rows(table), "epsilon": epsilon},
    )


def convergence_table_rows(table: ConvergenceTable) -> list[dict]:
    return [
        {"n": r.n, "sup_error": r.sup_error, "dkw_bound": r.dkw_bound, "seed": r.seed}
        for r in table.rows
    ]


# ---------------------------------------------------------------------------
# P7: convexity of the depth contours


def run_p7(
    depth_fn: DepthFunctionUnderTest,
    scenarios: Sequence[Scenario],
    trials: int = 1000,
    seed: int = 0,
) -> PropertyReport:
    """Random (alpha, K, L, lambda) with K, L in the alpha-contour: the
    Minkowski combination must stay in the contour."""
    rng = np.random.default_rng(seed)
    pools = []
    for sc in scenarios:
        bodies = list(dict.fromkeys(
            list(sc.probes) + list(sc.dist.atoms)
            + ([sc.maximizer] if sc.maximizer is not None else [])
        ))
        depths = [depth_fn.evaluate(b, sc.dist) for b in bodies]
        pools.append((sc, bodies, depths))
    applicable = 0
    attempts = 0
    while applicable < trials and attempts < 10 * trials:
        sc, bodies, depths = pools[attempts % len(pools)]
        attempts += 1
        alpha = Fraction(int(rng.integers(1, 10)), 10)
        members = [
            i for i, d in enumerate(depths)
            if not _values_exceed(alpha, d, depth_fn.tolerance)
        ]
        if len(members) < 2:
            continue  # alpha above the pool's depths: vacuously convex
        i, j = rng.choice(members, size=2, replace=True)
        lam = float(LAMBDA_GRID[int(rng.integers(0, len(LAMBDA_GRID)))])
        combo = convex_combination(bodies[int(i)], bodies[int(j)], lam)
        d_combo = depth_fn.evaluate(combo, sc.dist)
        applicable += 1
        if _values_exceed(alpha, d_combo, depth_fn.tolerance):
            return PropertyReport(
                "P7", "fail", applicable, seed,
                counterexample={
                    "scenario": sc.id,
                    "dist": dist_to_dict(sc.dist, exact=True),
                    "alpha": [alpha.numerator, alpha.denominator],
                    "first": body_to_dict(bodies[int(i)]),
                    "second": body_to_dict(bodies[int(j)]),
                    "lambda": lam,
                    "depth_first": _value_payload(depths[int(i)]),
                    "depth_second": _value_payload(depths[int(j)]),
                    "depth_combination": _value_payload(d_combo),
                },
            )
    return PropertyReport("P7", "pass", applicable, seed)


# ---------------------------------------------------------------------------
# taxonomy


ALGEBRAIC = ("P1", "P2", "P3a", "P4a")
GEOMETRIC = ("P1", "P2", "P3b", "P4b")
RESTRICTED_EXTRAS = ("P5", "P6", "P7")


def classify(reports: dict[str, PropertyReport]) -> tuple[str, ...]:
    """Map property verdicts to the depth-taxonomy labels.

    algebraic            = P1 ^ P2 ^ P3a ^ P4a
    restricted algebraic = algebraic ^ P5 ^ P6 ^ P7
    geometric            = P1 ^ P2 ^ P3b ^ P4b
    restricted geometric = geometric ^ P5 ^ P6 ^ P7

    All applicable labels are reported; a missing or non-pass verdict
    blocks every label that needs it, so adding passed properties never
    removes a label.
    """

    def passed(ids) -> bool:
        return all(
            pid in reports and reports[pid].verdict == "pass" for pid in ids
        )

    labels = []
    if passed(ALGEBRAIC):
        labels.append("algebraic")
        if passed(RESTRICTED_EXTRAS):
            labels.append("restricted algebraic")
    if passed(GEOMETRIC):
        labels.append("geometric")
        if passed(RESTRICTED_EXTRAS):
            labels.append("restricted geometric")
    return tuple(labels)


# ---------------------------------------------------------------------------
# suite orchestration


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int = 200
    scenarios: tuple[str, ...] = SCENARIO_FAMILIES
    epsilon: float = 0.05
    n_grid: tuple[int, ...] = (100, 1000, 10000)
    p2_probes: int = 500
    p7_trials: int = 1000


@dataclass(frozen=True)
class SuiteResult:
    reports: dict[str, PropertyReport]
    labels: tuple[str, ...]
    config: SuiteConfig
    evaluator: str


def run_suite(depth_fn: DepthFunctionUnderTest, config: SuiteConfig = SuiteConfig()) -> SuiteResult:
    """Run every axiom runner on the configured scenario families and
    classify the evaluator."""
    scenarios = build_scenarios(config.scenarios, config.seed)
    seed = config.seed
    p6_scenario = next(
        (sc for sc in scenarios if sc.dim == 1 or sc.dist.is_polytopal), scenarios[0]
    )
    reports = {
        "P1": run_p1(depth_fn, scenarios, config.trials, seed),
        "P2": run_p2(depth_fn, scenarios, config.p2_probes, seed + 1),
        "P3a": run_p3a(depth_fn, scenarios, config.trials, seed + 2),
        "P3b": run_p3b(depth_fn, scenarios, seed + 3),
        "P4a": run_p4(depth_fn, scenarios, "a", config.trials, seed + 4),
        "P4b": run_p4(depth_fn, scenarios, "b", config.trials, seed + 5),
        "P5": run_p5(depth_fn, scenarios, config.trials, seed + 6),
        "P6": run_p6(depth_fn, p6_scenario, config.n_grid, config.epsilon, seed + 7),
        "P7": run_p7(depth_fn, scenarios, config.p7_trials, seed + 8),
    }
    return SuiteResult(reports, classify(reports), config, depth_fn.name)


# ---------------------------------------------------------------------------
# counterexample self-certification


def reevaluate_counterexample(depth_fn: DepthFunctionUnderTest, report: PropertyReport) -> bool:
    """Recompute a failure payload from scratch; True when the stored
    counterexample still violates the property."""
    if report.verdict != "fail" or report.counterexample is None:
        raise ValueError("report carries no counterexample")
    ce = report.counterexample
    tol = depth_fn.tolerance
    pid = report.property_id

    if pid == "P6":
        # the P6 payload stores the offending row itself
        return ce["sup_error"] > ce["epsilon"] and ce["dkw_bound"] <= 0.05

    dist = dist_from_dict(ce["dist"])
    if pid == "P1":
        body = body_from_dict(ce["body"])
        t_map = AffineMap(
            tuple(tuple(r) for r in ce["matrix"]), body_from_dict(ce["translate"])
        )
        d0 = depth_fn.evaluate(body, dist)
        d1 = depth_fn.evaluate(
            affine_image(t_map, body),
            map_distribution(dist, lambda a: affine_image(t_map, a)),
        )
        if depth_fn.exact and isinstance(d0, Fraction) and isinstance(d1, Fraction):
            return d0 != d1
        return abs(float(d0) - float(d1)) > max(tol, 1e-9)
    if pid == "P2":
        center = body_from_dict(ce["center"])
        probe = body_from_dict(ce["probe"])
        return _values_exceed(
            depth_fn.evaluate(probe, dist), depth_fn.evaluate(center, dist), tol
        )
    if pid == "P3a":
        k_star = body_from_dict(ce["maximizer"])
        probe = body_from_dict(ce["probe"])
        combo = convex_combination(k_star, probe, ce["lambda"])
        return _values_exceed(
            depth_fn.evaluate(probe, dist), depth_fn.evaluate(combo, dist), tol
        )
    if pid == "P3b":
        k_star = body_from_dict(ce["maximizer"])
        l_body = body_from_dict(ce["between"])
        s_body = body_from_dict(ce["far"])
        d_ks, d_kl, d_ls = (
            hausdorff(k_star, s_body), hausdorff(k_star, l_body), hausdorff(l_body, s_body)
        )
        between = abs(d_ks.value - (d_kl.value + d_ls.value)) <= 1e-9
        return between and _values_exceed(
            depth_fn.evaluate(s_body, dist), depth_fn.evaluate(l_body, dist), tol
        )
    if pid in ("P4a", "P4b"):
        body = body_from_dict(ce["body"])
        step = body_from_dict(ce["step"])
        shifted = minkowski_sum(body, scale(step, float(ce["n"])))
        return _values_exceed(depth_fn.evaluate(shifted, dist), Fraction(0), tol)
    if pid == "P5":
        body = body_from_dict(ce["body"])
        unit = Box((-1.0,) * dist.dim, (1.0,) * dist.dim)
        perturbed = minkowski_sum(body, scale(unit, 1.0 / ce["n"]))
        return _values_exceed(
            depth_fn.evaluate(perturbed, dist), depth_fn.evaluate(body, dist), tol
        )
    if pid == "P7":
        alpha = Fraction(*ce["alpha"])
        first = body_from_dict(ce["first"])
        second = body_from_dict(ce["second"])
        combo = convex_combination(first, second, ce["lambda"])
        in_contour = not _values_exceed(alpha, depth_fn.evaluate(first, dist), tol) and not (
            _values_exceed(alpha, depth_fn.evaluate(second, dist), tol)
        )
        return in_contour and _values_exceed(alpha, depth_fn.evaluate(combo, dist), tol)
    raise ValueError(f"no re-evaluation rule for {pid}")  # pragma: no cover


# ---------------------------------------------------------------------------
# mutant evaluators (the harness's own test surface)


def _expectation_body(dist: DiscreteSetDistribution) -> ConvexBody:
    """Weighted Minkowski average of the atoms (selection expectation)."""
    acc = None
    for body, w in zip(dist.atoms, dist.weights):
        piece = scale(body, float(w))
        acc = piece if acc is None else minkowski_sum(acc, piece)
    return acc


def mutant_positive_side_only() -> DepthFunctionUnderTest:
    """1-d depth that only looks at direction +1; breaks affine invariance
    under reflection."""

    def evaluate(body, dist):
        u = UnitDirection((1.0,))
        law = support_law(dist, u)
        x = support(body, u)
        return min(law.cdf_le(x), law.cdf_ge(x))

    return DepthFunctionUnderTest("mutant-positive-side", evaluate, exact=True)


def mutant_size_reward() -> DepthFunctionUnderTest:
    """Rewards sheer size, so any probe larger than the center beats it."""

    def evaluate(body, dist):
        width = sum(
            support(body, u) for u in direction_set(body.dim, "axes", 2 * body.dim)
        )
        return width / (1.0 + abs(width)) if width > 0 else 0.0

    return DepthFunctionUnderTest("mutant-size-reward", evaluate, exact=False)


def mutant_distance_bump(lo: float = 2.0, hi: float = 3.0) -> DepthFunctionUnderTest:
    """Decays with distance from the expectation body except on a ring
    where it snaps back to 1; monotonicity and contour convexity break."""

    def evaluate(body, dist):
        center = _expectation_body(dist)
        d = hausdorff(body, center).value
        if lo <= d <= hi:
            return 1.0
        return max(0.0, 1.0 - d)

    return DepthFunctionUnderTest("mutant-distance-bump", evaluate, exact=False)


def mutant_step_discontinuous() -> DepthFunctionUnderTest:
    """0 exactly at the expectation body, 1 everywhere else: lower
    semicontinuous, so shrinking perturbations overshoot the limit."""

    def evaluate(body, dist):
        center = _expectation_body(dist)
        return 0.0 if hausdorff(body, center).value <= 1e-9 else 1.0

    return DepthFunctionUnderTest("mutant-step", evaluate, exact=False)


def mutant_constant(value: float = 1.0) -> DepthFunctionUnderTest:
    """Never vanishes at infinity (fails P4a and P4b)."""

    def evaluate(body, dist):
        return value

    return DepthFunctionUnderTest("mutant-constant", evaluate, exact=False)


MUTANTS = {
    "mutant-positive-side": mutant_positive_side_only,
    "mutant-size-reward": mutant_size_reward,
    "mutant-distance-bump": mutant_distance_bump,
    "mutant-step": mutant_step_discontinuous,
    "mutant-constant": mutant_constant,
}
