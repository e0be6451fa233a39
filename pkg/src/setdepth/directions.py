"""Deterministic unit-direction sets used by the sampled depth estimator
and the grid Hausdorff fallback.

All generators return an (m, p) array of unit rows.  Defaults follow the
project convention: the circle gets an equispaced grid, S^2 a golden-spiral
low-discrepancy set, and higher spheres seeded normalized Gaussians.
"""

from __future__ import annotations

import math

import numpy as np

DEFAULT_GRID_2D = 1024
DEFAULT_GRID_3D = 2048
DEFAULT_GRID_ND = 4096


def axes(p: int) -> np.ndarray:
    """The 2p signed coordinate directions."""
    eye = np.eye(p)
    return np.concatenate([eye, -eye])


def circle_grid(m: int) -> np.ndarray:
    """m equispaced directions on the unit circle, starting at angle 0."""
    theta = 2.0 * math.pi * np.arange(m) / m
    return np.column_stack([np.cos(theta), np.sin(theta)])


def fibonacci_sphere(m: int) -> np.ndarray:
    """Golden-spiral points on S^2; a standard low-discrepancy layout."""
    i = np.arange(m)
    phi = math.pi * (3.0 - math.sqrt(5.0)) * i
    z = 1.0 - (2.0 * i + 1.0) / m
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    pts = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    return pts / np.linalg.norm(pts, axis=1)[:, None]


def gaussian_sphere(p: int, m: int, seed: int) -> np.ndarray:
    """m seeded uniform directions on S^{p-1} (normalized Gaussians)."""
    rng = np.random.default_rng(seed)
    pts = rng.standard_normal((m, p))
    norms = np.linalg.norm(pts, axis=1)
    while np.any(norms < 1e-12):  # pragma: no cover - essentially impossible
        bad = norms < 1e-12
        pts[bad] = rng.standard_normal((int(bad.sum()), p))
        norms = np.linalg.norm(pts, axis=1)
    return pts / norms[:, None]


def default_grid(p: int, seed: int = 0) -> np.ndarray:
    """The project-default dense grid for dimension p."""
    if p == 1:
        return np.array([[1.0], [-1.0]])
    if p == 2:
        return circle_grid(DEFAULT_GRID_2D)
    if p == 3:
        return fibonacci_sphere(DEFAULT_GRID_3D)
    return gaussian_sphere(p, DEFAULT_GRID_ND, seed)
