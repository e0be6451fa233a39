"""Tukey depth for compact convex random sets."""

from .geometry import (
    AffineMap,
    Ball,
    Box,
    ConvexBody,
    DimensionMismatchError,
    HausdorffResult,
    Interval,
    LinearImageBody,
    NeedsSamplingError,
    ScaledBody,
    SingularMatrixError,
    SumBody,
    UnitDirection,
    VPolytope,
    affine_image,
    convex_combination,
    hausdorff,
    minkowski_sum,
    origin,
    scale,
    singleton,
    sphere_map,
    support,
)
from .distribution import (
    DirectionalLaw,
    DiscreteSetDistribution,
    dirac,
    is_compact_symmetric,
    make_discrete,
    sample,
    support_law,
    two_atom_symmetric_center,
)
from .depth import (
    DepthConfig,
    DepthReport,
    contour_membership,
    depth,
    depth_interval_exact,
    depth_poly2d_exact,
    depth_sampled,
    direction_set,
    halfspace_depth_1d,
    rank,
    tukey_evaluator,
    tukey_median_1d,
)

__version__ = "0.1.0"
