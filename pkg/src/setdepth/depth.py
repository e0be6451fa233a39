"""Tukey depth of convex bodies with respect to set-valued distributions.

The depth of K is the infimum over unit directions u of
``min(P(s_Gamma(u) <= s_K(u)), P(s_Gamma(u) >= s_K(u)))``.  For p = 1 the
sphere is {+1, -1} and the infimum is a minimum over two directions; for
p = 2 with polytopal bodies the circle splits into finitely many arcs on
which both probabilities are constant, so the infimum is computed exactly
by arc decomposition; otherwise a finite direction set yields an upper
bound.  All probabilities are exact rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import directions as _dirs
from .distribution import DirectionalLaw, DiscreteSetDistribution
from .geometry import (
    ConvexBody,
    DimensionMismatchError,
    Interval,
    NeedsSamplingError,
    UnitDirection,
    convex_hull_2d,
    edge_normal_angles_2d,
)

EVENT_ANGLE_TOL = 1e-12
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class DepthConfig:
    """Engine selection and sampling budget for depth evaluations."""

    method: str = "auto"  # auto | exact | sampled
    direction_budget: int = 1024
    seed: int = 0
    tolerance: float = 1e-9

    def __post_init__(self):
        if self.method not in ("auto", "exact", "sampled"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.direction_budget < 1:
            raise ValueError("direction budget must be >= 1")


DEFAULT_CONFIG = DepthConfig()


@dataclass(frozen=True)
class DepthReport:
    """Depth value with its certificate.

    ``value`` is an exact rational equal to the smaller tail probability of
    the directional law at the witness direction; recomputing
    ``halfspace_depth_1d`` there reproduces it exactly.  ``method`` is one
    of exact1d / exact2d / sampled; sampled values are upper bounds of the
    true infimum.
    """

    value: Fraction
    witness_direction: UnitDirection
    witness_side: str  # "le" | "ge"
    method: str
    directions_used: int


def halfspace_depth_1d(x: float, law: DirectionalLaw, tol: float = 1e-9) -> Fraction:
    """Univariate halfspace depth min(P(value <= x), P(value >= x))."""
    return min(law.cdf_le(x, tol), law.cdf_ge(x, tol))


def _scan_directions(
    u_rows: np.ndarray,
    body: ConvexBody,
    dist: DiscreteSetDistribution,
    tol: float,
) -> tuple[Fraction, int, str]:
    """Minimum halfspace depth over the rows of ``u_rows``.

    Returns (value, argmin row index, side); ties keep the lowest index and
    prefer the "le" side.  Counts are exact, computed from boolean masks
    with weights summed as rationals (mask patterns are cached because the
    counts are constant on arcs).
    """
    s_body = body.support_batch(u_rows)
    vals = np.stack([a.support_batch(u_rows) for a in dist.atoms])
    le = vals <= s_body + tol
    ge = vals >= s_body - tol
    weights = dist.weights
    cache: dict[bytes, Fraction] = {}

    def mass(col: np.ndarray) -> Fraction:
        key = col.tobytes()
        got = cache.get(key)
        if got is None:
            got = sum((w for w, hit in zip(weights, col) if hit), Fraction(0))
            cache[key] = got
        return got

    best: Fraction | None = None
    best_k = 0
    best_side = "le"
    for k in range(u_rows.shape[0]):
        cle = mass(le[:, k])
        cge = mass(ge[:, k])
        d, side = (cle, "le") if cle <= cge else (cge, "ge")
        if best is None or d < best:
            best, best_k, best_side = d, k, side
    return best, best_k, best_side


def depth_interval_exact(
    body: ConvexBody, dist: DiscreteSetDistribution, tol: float = 1e-9
) -> DepthReport:
    """Exact depth for p = 1: the unit sphere is just {+1, -1}."""
    if body.dim != 1 or dist.dim != 1:
        raise DimensionMismatchError("exact 1-d engine needs dimension 1")
    u_rows = np.array([[1.0], [-1.0]])
    value, k, side = _scan_directions(u_rows, body, dist, tol)
    return DepthReport(value, UnitDirection(u_rows[k]), side, "exact1d", 2)


def _event_angles(body: ConvexBody, dist: DiscreteSetDistribution) -> list[float]:
    """All circle angles where some comparison s_atom vs s_body can change.

    These are (i) outward edge-normal angles of every polytope involved
    (support-function breakpoints) and (ii) for each atom-vertex/body-vertex
    pair the two angles perpendicular to their difference (zeros of the
    single sinusoid s_atom - s_body on an arc where both maximizers are
    fixed).  A superset of the strictly necessary events is harmless.
    """
    angles: list[float] = []
    bodies = list(dist.atoms) + [body]
    hulls = []
    for b in bodies:
        if not b.is_polytopal:
            raise NeedsSamplingError(
                f"exact 2-d engine needs polytopal bodies, got {type(b).__name__}"
            )
        angles.extend(edge_normal_angles_2d(b))
        hulls.append(convex_hull_2d(b.vertices()))
    k_hull = hulls[-1]
    for atom_hull in hulls[:-1]:
        for vx, vy in atom_hull:
            for wx, wy in k_hull:
                dx, dy = vx - wx, vy - wy
                if dx * dx + dy * dy <= 1e-30:
                    continue
                phi = math.atan2(dy, dx)
                angles.append(phi + 0.5 * math.pi)
                angles.append(phi - 0.5 * math.pi)
    return angles


def _dedup_angles(angles: list[float]) -> list[float]:
    norm = sorted(a % TWO_PI for a in angles)
    out: list[float] = []
    for a in norm:
        if not out or a - out[-1] > EVENT_ANGLE_TOL:
            out.append(a)
    # wraparound: first and last may be the same angle mod 2*pi
    if len(out) > 1 and (TWO_PI - out[-1]) + out[0] <= EVENT_ANGLE_TOL:
        out.pop()
    return out


def depth_poly2d_exact(
    body: ConvexBody, dist: DiscreteSetDistribution, tol: float = 1e-9
) -> DepthReport:
    """Exact depth for p = 2 with polytopal body and atoms.

    Both tail probabilities are constant on the open arcs between event
    angles, so evaluating every arc midpoint reaches the true infimum; the
    event angles themselves are evaluated too (they can only tie or exceed
    their neighbors, but degenerate zero-length arcs cost nothing to
    guard).
    """
    if body.dim != 2 or dist.dim != 2:
        raise DimensionMismatchError("exact 2-d engine needs dimension 2")
    events = _dedup_angles(_event_angles(body, dist))
    if not events:
        # constant counts on the whole circle (all bodies are singletons
        # stacked on one point); any direction witnesses the depth
        eval_angles = [0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi]
    else:
        eval_angles = list(events)
        n = len(events)
        for i in range(n):
            a = events[i]
            b = events[(i + 1) % n] + (TWO_PI if i == n - 1 else 0.0)
            eval_angles.append(((a + b) / 2.0) % TWO_PI)
    theta = np.array(sorted(eval_angles))
    u_rows = np.column_stack([np.cos(theta), np.sin(theta)])
    value, k, side = _scan_directions(u_rows, body, dist, tol)
    return DepthReport(value, UnitDirection(u_rows[k]), side, "exact2d", len(theta))


def direction_set(
    p: int, strategy: str = "grid2d", m: int = 64, seed: int = 0
) -> tuple[UnitDirection, ...]:
    """Deterministic direction sets for the sampled estimator.

    p = 1 always returns (+1, -1) regardless of strategy or budget.
    Strategies: axes (2p signed axes, any p), grid2d (p = 2), lowdisc
    (p = 3 golden spiral), random (seeded Gaussian, p >= 2).
    """
    if m < 1:
        raise ValueError("direction count must be >= 1")
    if strategy not in ("axes", "grid2d", "lowdisc", "random"):
        raise ValueError(f"unknown direction strategy {strategy!r}")
    if p == 1:
        return (UnitDirection((1.0,)), UnitDirection((-1.0,)))
    if strategy == "axes":
        rows = _dirs.axes(p)
    elif strategy == "grid2d":
        if p != 2:
            raise ValueError("grid2d strategy needs p = 2")
        rows = _dirs.circle_grid(m)
    elif strategy == "lowdisc":
        if p != 3:
            raise ValueError("lowdisc strategy needs p = 3")
        rows = _dirs.fibonacci_sphere(m)
    else:
        rows = _dirs.gaussian_sphere(p, m, seed)
    return tuple(UnitDirection(row) for row in rows)


def depth_sampled(
    body: ConvexBody,
    dist: DiscreteSetDistribution,
    dirs: Sequence[UnitDirection],
    tol: float = 1e-9,
) -> DepthReport:
    """Minimum halfspace depth over a finite direction set.

    An upper bound of the true infimum, non-increasing as the set grows.
    """
    if not dirs:
        raise ValueError("need at least one direction")
    if any(u.dim != body.dim for u in dirs):
        raise DimensionMismatchError("direction dimension differs from body dimension")
    if body.dim != dist.dim:
        raise DimensionMismatchError("body and distribution dimensions differ")
    u_rows = np.array([u.coords for u in dirs])
    value, k, side = _scan_directions(u_rows, body, dist, tol)
    return DepthReport(value, dirs[k], side, "sampled", len(dirs))


def _default_strategy(p: int) -> str:
    if p <= 2:
        return "grid2d" if p == 2 else "axes"
    return "lowdisc" if p == 3 else "random"


def depth(
    body: ConvexBody,
    dist: DiscreteSetDistribution,
    config: DepthConfig = DEFAULT_CONFIG,
) -> DepthReport:
    """Dispatching front door: exact for p = 1, exact by arc decomposition
    for all-polytopal p = 2, otherwise sampled with the configured budget."""
    if body.dim != dist.dim:
        raise DimensionMismatchError(
            f"body dim {body.dim} vs distribution dim {dist.dim}"
        )
    p = body.dim
    tol = config.tolerance
    if config.method in ("auto", "exact"):
        if p == 1:
            return depth_interval_exact(body, dist, tol)
        if p == 2 and (config.method == "exact" or (body.is_polytopal and dist.is_polytopal)):
            return depth_poly2d_exact(body, dist, tol)
        if config.method == "exact":
            raise NeedsSamplingError(f"no exact depth engine for dimension {p}")
    dirs = direction_set(p, _default_strategy(p), config.direction_budget, config.seed)
    return depth_sampled(body, dist, dirs, tol)


def tukey_median_1d(dist: DiscreteSetDistribution):
    """Deepest interval for a 1-d distribution.

    Built endpoint-wise from the weighted lower medians of the left and
    right endpoint laws; each directional tail is maximized independently
    at its median and the pair is feasible because the endpoint order is
    preserved.
    """
    if dist.dim != 1:
        raise DimensionMismatchError("tukey_median_1d needs dimension 1")
    u_pos = UnitDirection((1.0,))
    u_neg = UnitDirection((-1.0,))
    lo = [(-a.support(u_neg), w) for a, w in zip(dist.atoms, dist.weights)]
    hi = [(a.support(u_pos), w) for a, w in zip(dist.atoms, dist.weights)]
    return Interval(_lower_weighted_median(lo), _lower_weighted_median(hi))


def _lower_weighted_median(pairs: list[tuple[float, Fraction]]) -> float:
    """Smallest value whose cumulative weight reaches 1/2 (left-continuous
    convention; ties resolve toward the smaller value)."""
    half = Fraction(1, 2)
    acc = Fraction(0)
    for v, w in sorted(pairs):
        acc += w
        if acc >= half:
            return v
    return pairs[-1][0]  # pragma: no cover - weights sum to 1


def rank(
    bodies: Sequence[ConvexBody],
    dist: DiscreteSetDistribution,
    config: DepthConfig = DEFAULT_CONFIG,
) -> list[tuple[ConvexBody, DepthReport]]:
    """Bodies sorted by depth, deepest first; ties keep input order."""
    if not bodies:
        raise ValueError("need at least one body to rank")
    reports = [(b, depth(b, dist, config)) for b in bodies]
    return sorted(reports, key=lambda br: -br[1].value)


def contour_membership(
    body: ConvexBody,
    dist: DiscreteSetDistribution,
    alpha: float,
    config: DepthConfig = DEFAULT_CONFIG,
) -> bool:
    """Whether the body belongs to the depth contour D_alpha."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    report = depth(body, dist, config)
    return report.value >= Fraction(alpha) - Fraction(config.tolerance)


DepthEvaluator = Callable[[ConvexBody, DiscreteSetDistribution], Fraction]


def tukey_evaluator(config: DepthConfig = DEFAULT_CONFIG) -> DepthEvaluator:
    """The depth value as a plain (body, dist) -> rational callable."""

    def evaluate(body: ConvexBody, dist: DiscreteSetDistribution) -> Fraction:
        return depth(body, dist, config).value

    return evaluate
