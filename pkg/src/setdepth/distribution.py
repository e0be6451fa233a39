"""Finitely supported distributions of compact convex random sets.

Weights are exact ``fractions.Fraction`` values so every probability the
depth engines report is an exact rational (a sum of atom weights).  An
i.i.d. sample is just the equal-weight special case with weights k/n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .geometry import (
    ConvexBody,
    DimensionMismatchError,
    UnitDirection,
    convex_combination,
    support,
)

WEIGHT_SUM_TOL = 1e-6
VALUE_TOL = 1e-9


def _as_fraction(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, (int, float)):
        return Fraction(w)  # exact binary value of the float
    raise TypeError(f"weight must be a number or Fraction, got {type(w).__name__}")


@dataclass(frozen=True)
class DiscreteSetDistribution:
    """Law of a compact convex random set with finitely many atoms."""

    atoms: tuple[ConvexBody, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.atoms:
            raise ValueError("distribution needs at least one atom")
        if len(self.atoms) != len(self.weights):
            raise ValueError("atoms and weights differ in length")
        if any(w <= 0 for w in self.weights):
            raise ValueError("atom weights must be positive")
        if sum(self.weights) != 1:
            raise ValueError("atom weights must sum to exactly 1 (use make_discrete)")
        dims = {a.dim for a in self.atoms}
        if len(dims) != 1:
            raise DimensionMismatchError(f"atoms span several dimensions: {sorted(dims)}")

    @property
    def dim(self) -> int:
        return self.atoms[0].dim

    @property
    def is_polytopal(self) -> bool:
        return all(a.is_polytopal for a in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)


def make_discrete(
    atoms: Sequence[ConvexBody],
    weights: Sequence[float | Fraction] | None = None,
) -> DiscreteSetDistribution:
    """Validate and build a distribution; omitted weights mean equal weight.

    Weights may be floats summing to 1 within 1e-6; they are renormalized
    exactly so the stored rationals sum to 1.
    """
    atoms = tuple(atoms)
    if not atoms:
        raise ValueError("distribution needs at least one atom")
    if weights is None:
        fr = [Fraction(1, len(atoms))] * len(atoms)
    else:
        if len(weights) != len(atoms):
            raise ValueError(f"{len(atoms)} atoms but {len(weights)} weights")
        fr = [_as_fraction(w) for w in weights]
        if any(w <= 0 for w in fr):
            raise ValueError("atom weights must be positive")
        total = sum(fr)
        if abs(float(total) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {float(total)}, expected 1 within {WEIGHT_SUM_TOL}")
        fr = [w / total for w in fr]
    return DiscreteSetDistribution(atoms, tuple(fr))


def dirac(body: ConvexBody) -> DiscreteSetDistribution:
    """The degenerate law concentrated on one body."""
    return DiscreteSetDistribution((body,), (Fraction(1),))


def sample(dist: DiscreteSetDistribution, n: int, seed: int) -> DiscreteSetDistribution:
    """Empirical distribution of n i.i.d. draws, deterministic in the seed.

    Repeated draws of the same atom are aggregated, so the result carries
    exact weights k/n over the atoms that appeared.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    probs = np.array([float(w) for w in dist.weights])
    probs /= probs.sum()
    idx = rng.choice(len(dist.atoms), size=n, p=probs)
    counts = np.bincount(idx, minlength=len(dist.atoms))
    atoms = tuple(a for a, c in zip(dist.atoms, counts) if c > 0)
    weights = tuple(Fraction(int(c), n) for c in counts if c > 0)
    return DiscreteSetDistribution(atoms, weights)


@dataclass(frozen=True)
class DirectionalLaw:
    """Law of the real random variable s_Gamma(u) for one direction u."""

    values: tuple[float, ...]
    weights: tuple[Fraction, ...]
    direction: UnitDirection

    def cdf_le(self, x: float, tol: float = VALUE_TOL) -> Fraction:
        """P(s_Gamma(u) <= x), ties within tol counted in."""
        return sum((w for v, w in zip(self.values, self.weights) if v <= x + tol), Fraction(0))

    def cdf_ge(self, x: float, tol: float = VALUE_TOL) -> Fraction:
        """P(s_Gamma(u) >= x), ties within tol counted in."""
        return sum((w for v, w in zip(self.values, self.weights) if v >= x - tol), Fraction(0))


def support_law(dist: DiscreteSetDistribution, u: UnitDirection) -> DirectionalLaw:
    """Pushforward of the distribution through the support oracle at u."""
    if u.dim != dist.dim:
        raise DimensionMismatchError(f"direction dim {u.dim} vs distribution dim {dist.dim}")
    return DirectionalLaw(tuple(a.support(u) for a in dist.atoms), dist.weights, u)


def map_distribution(dist: DiscreteSetDistribution, f) -> DiscreteSetDistribution:
    """Apply a body transform atom-wise, keeping the weights."""
    return DiscreteSetDistribution(tuple(f(a) for a in dist.atoms), dist.weights)


def two_atom_symmetric_center(k1: ConvexBody, k2: ConvexBody) -> ConvexBody:
    """Minkowski midpoint (K1 + K2)/2.

    For the uniform law on {K1, K2} the directional law of s_Gamma(u) sits
    at the midpoint's support value plus/minus the same gap with equal
    probability, so this is a certified compact-symmetric center.
    """
    if k1.dim != k2.dim:
        raise DimensionMismatchError(f"bodies have dims {k1.dim} and {k2.dim}")
    return convex_combination(k1, k2, 0.5)


def is_compact_symmetric(
    dist: DiscreteSetDistribution,
    center: ConvexBody,
    dirs: Sequence[UnitDirection],
    tol: float = VALUE_TOL,
) -> bool:
    """Check central symmetry of s_Gamma(u) about s_center(u) on the given
    directions.

    Values are clustered within tol and the aggregated weights compared
    exactly; the certificate covers only the directions supplied (for 1-d
    interval laws {+1,-1} is the whole sphere, so there it is global).
    """
    if not dirs:
        raise ValueError("need at least one direction")
    for u in dirs:
        law = support_law(dist, u)
        c = support(center, u)
        gaps = sorted(zip((v - c for v in law.values), law.weights))
        merged: list[list] = []
        for g, w in gaps:
            if merged and g - merged[-1][0] <= tol:
                merged[-1][1] += w
            else:
                merged.append([g, w])
        i, j = 0, len(merged) - 1
        while i < j:
            if abs(merged[i][0] + merged[j][0]) > tol or merged[i][1] != merged[j][1]:
                return False
            i += 1
            j -= 1
        if i == j and abs(merged[i][0]) > tol:
            return False
    return True
