"""Squared-exponential kernel basis shared by the ratio and posterior estimators.

A basis is a set of B centers drawn from the training observations plus a
bandwidth sigma. The feature map phi(y) evaluates the kernel between y and
every center; stacking phi over a batch of points gives the N x B design
matrix used by all the least-squares fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Default number of kernel centers: a basis at every training point is allowed,
# but capping at 100 keeps the B x B solves trivial at the scales used here.
DEFAULT_MAX_CENTERS = 100

# Bandwidth candidates are the median pairwise distance scaled by these factors.
SIGMA_GRID_MULTIPLIERS = (0.25, 0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class KernelBasis:
    """Kernel centers plus bandwidth.

    centers : (B, d) array, a subset of the training observations
    sigma : bandwidth, strictly positive
    seed : seed used for the center subsample
    center_indices : (B,) indices of the centers into the training data
    """

    centers: np.ndarray
    sigma: float
    seed: int
    center_indices: np.ndarray

    def __post_init__(self):
        centers = np.asarray(self.centers, dtype=float)
        if centers.ndim != 2 or centers.shape[0] < 1:
            raise ValueError("centers must be a nonempty (B, d) array")
        if not (np.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be positive and finite, got {self.sigma}")
        object.__setattr__(self, "centers", centers)
        object.__setattr__(
            self, "center_indices", np.asarray(self.center_indices, dtype=int)
        )

    @property
    def n_centers(self) -> int:
        return self.centers.shape[0]

    @property
    def dim(self) -> int:
        return self.centers.shape[1]


def kernel_eval(y, c, sigma: float) -> float:
    """Squared-exponential kernel exp(-||y - c||^2 / (2 sigma^2))."""
    y = np.asarray(y, dtype=float).ravel()
    c = np.asarray(c, dtype=float).ravel()
    if y.shape != c.shape:
        raise ValueError(f"dimension mismatch: {y.shape} vs {c.shape}")
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    diff = y - c
    return math.exp(-float(diff @ diff) / (2.0 * sigma * sigma))


def _as_points(data) -> np.ndarray:
    points = np.asarray(data, dtype=float)
    if points.ndim == 1:
        points = points[:, None]
    if points.ndim != 2:
        raise ValueError(f"observations must be (N, d), got shape {points.shape}")
    return points


def build_basis(data, max_centers: int, sigma: float, seed: int) -> KernelBasis:
    """Select kernel centers from the training observations.

    Uses all points when N <= max_centers, otherwise a seeded uniform
    subsample without replacement, kept in data order. Data where every
    observation is identical is rejected here rather than letting a zero
    bandwidth surface downstream.
    """
    points = _as_points(data)
    n = points.shape[0]
    if n == 0:
        raise ValueError("cannot build a basis from empty data")
    if max_centers < 1:
        raise ValueError("max_centers must be >= 1")
    if bool(np.all(points == points[0])):
        raise ValueError("all observations are identical; kernel basis is degenerate")
    if n <= max_centers:
        indices = np.arange(n)
    else:
        rng = np.random.default_rng(seed)
        indices = np.sort(rng.choice(n, size=max_centers, replace=False))
    return KernelBasis(
        centers=points[indices].copy(),
        sigma=float(sigma),
        seed=int(seed),
        center_indices=indices,
    )


def design_matrix(basis: KernelBasis, points) -> np.ndarray:
    """Kernel design matrix: row i is phi(points[i]) against the basis centers.

    Column-by-column differences keep self-distances exactly zero, so an
    observation that coincides with a center produces an entry of exactly 1.
    """
    points = _as_points(points)
    if points.shape[0] == 0:
        return np.zeros((0, basis.n_centers))
    if points.shape[1] != basis.dim:
        raise ValueError(
            f"dimension mismatch: points are {points.shape[1]}-d, "
            f"centers are {basis.dim}-d"
        )
    out = np.empty((points.shape[0], basis.n_centers))
    denom = 2.0 * basis.sigma * basis.sigma
    for b, center in enumerate(basis.centers):
        diff = points - center
        out[:, b] = np.exp(-(diff * diff).sum(axis=1) / denom)
    return out


def median_heuristic(data, subsample: int = 1000, seed: int = 0) -> float:
    """Median pairwise Euclidean distance over a seeded subsample.

    Anchors the bandwidth candidate grid for cross-validation.
    """
    points = _as_points(data)
    n = points.shape[0]
    if n < 2:
        raise ValueError("median heuristic needs at least 2 points")
    if n > subsample:
        rng = np.random.default_rng(seed)
        points = points[np.sort(rng.choice(n, size=subsample, replace=False))]
        n = subsample
    sq_norms = (points * points).sum(axis=1)
    sq_dists = sq_norms[:, None] + sq_norms[None, :] - 2.0 * points @ points.T
    iu = np.triu_indices(n, k=1)
    median = float(np.median(np.sqrt(np.maximum(sq_dists[iu], 0.0))))
    if median <= 0.0:
        raise ValueError("all points identical: median pairwise distance is zero")
    return median


def default_sigma_grid(data, subsample: int = 1000, seed: int = 0) -> np.ndarray:
    """Bandwidth candidates: median heuristic times SIGMA_GRID_MULTIPLIERS."""
    med = median_heuristic(data, subsample=subsample, seed=seed)
    return med * np.asarray(SIGMA_GRID_MULTIPLIERS)
