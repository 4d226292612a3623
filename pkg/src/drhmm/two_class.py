"""Direct two-class likelihood-ratio estimation by regularized least squares.

Fits w(y) = theta^T phi(y) to the ratio of the label-1 density over the
label-0 density. The squared-loss objective has the closed-form minimizer

    theta = (Phi^T M0 Phi + ridge I)^-1 Phi^T m1

where M0 selects denominator-class rows and m1 indicates numerator-class
membership. Negative predictions are rounded up to zero at evaluation time;
the stored coefficients are the raw minimizer.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel_basis import (
    DEFAULT_MAX_CENTERS,
    KernelBasis,
    _as_points,
    build_basis,
    design_matrix,
)

# Ridge candidates used when the caller does not supply a grid.
DEFAULT_RIDGE_GRID = (1e-3, 1e-2, 1e-1, 1.0, 10.0)


@dataclass(frozen=True)
class RatioModel:
    """Coefficients of a fitted two-class likelihood-ratio function."""

    theta: np.ndarray
    basis: KernelBasis
    ridge: float

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        if theta.shape != (self.basis.n_centers,):
            raise ValueError(
                f"theta has length {theta.shape}, basis has {self.basis.n_centers} centers"
            )
        if not self.ridge > 0:
            raise ValueError("ridge must be strictly positive")
        object.__setattr__(self, "theta", theta)


def _check_two_class_labels(labels, n: int) -> np.ndarray:
    labels = np.asarray(labels, dtype=int)
    if labels.shape != (n,):
        raise ValueError("labels must align with the observations")
    if not np.all((labels == 0) | (labels == 1)):
        raise ValueError("labels must be 0 (denominator) or 1 (numerator)")
    for cls in (0, 1):
        if not np.any(labels == cls):
            raise ValueError(f"class {cls} has no samples")
    return labels


def fit_two_class(data, labels, basis: KernelBasis, ridge: float) -> RatioModel:
    """Closed-form least-squares fit of the label-1 over label-0 density ratio."""
    points = _as_points(data)
    labels = _check_two_class_labels(labels, points.shape[0])
    if not ridge > 0:
        raise ValueError("ridge must be strictly positive")
    if not np.all(np.isfinite(points)):
        raise ValueError("observations contain non-finite values")
    phi = design_matrix(basis, points)
    phi_den = phi[labels == 0]
    h = phi[labels == 1].sum(axis=0)
    gram = phi_den.T @ phi_den
    gram[np.diag_indices_from(gram)] += ridge
    theta = np.linalg.solve(gram, h)
    if not np.all(np.isfinite(theta)):
        raise np.linalg.LinAlgError("ratio solve produced non-finite coefficients")
    return RatioModel(theta=theta, basis=basis, ridge=float(ridge))


def evaluate_ratio(model: RatioModel, y):
    """Estimated ratio max(0, theta^T phi(y)); accepts one point or a batch."""
    y = np.asarray(y, dtype=float)
    single = y.ndim <= 1
    values = design_matrix(model.basis, y[None, :] if single else y) @ model.theta
    values = np.maximum(values, 0.0)
    return float(values[0]) if single else values


def stratified_folds(labels, folds: int, seed: int) -> np.ndarray:
    """Assign each sample to a fold, round-robin within each class.

    Guarantees every fold sees every class when each class has >= folds
    samples. Returns an array of fold ids aligned with the labels.
    """
    labels = np.asarray(labels)
    if folds < 2:
        raise ValueError("folds must be >= 2")
    rng = np.random.default_rng(seed)
    assignment = np.empty(labels.shape[0], dtype=int)
    for cls in np.unique(labels):
        idx = np.flatnonzero(labels == cls)
        if idx.size < folds:
            raise ValueError(f"class {cls} has {idx.size} samples, needs >= {folds}")
        perm = rng.permutation(idx)
        assignment[perm] = np.arange(perm.size) % folds
    return assignment


def _holdout_objective(values: np.ndarray, labels: np.ndarray) -> float:
    # Empirical J on held-out data, constant dropped: expectations are the
    # per-class sample means of the raw (unclipped) linear predictions.
    w_den = values[labels == 0]
    w_num = values[labels == 1]
    return 0.5 * float(np.mean(w_den * w_den)) - float(np.mean(w_num))


def cross_validate_two_class(
    data,
    labels,
    sigma_grid,
    ridge_grid,
    folds: int,
    seed: int,
    max_centers: int = DEFAULT_MAX_CENTERS,
) -> tuple[float, float, float]:
    """Grid search (sigma, ridge) minimizing the mean held-out ratio objective.

    Folds are seeded and stratified by class; kernel centers are drawn once
    from the full data with the same seed for every candidate bandwidth.
    Returns the winning (sigma, ridge, score).
    """
    points = _as_points(data)
    labels = _check_two_class_labels(labels, points.shape[0])
    sigma_grid = np.atleast_1d(np.asarray(sigma_grid, dtype=float))
    ridge_grid = np.atleast_1d(np.asarray(ridge_grid, dtype=float))
    if sigma_grid.size == 0 or ridge_grid.size == 0:
        raise ValueError("parameter grids must be nonempty")
    fold_of = stratified_folds(labels, folds, seed)

    best = None
    for sigma in sigma_grid:
        from .kernel_basis import DEFAULT_MAX_CENTERS

        basis = build_basis(points, DEFAULT_MAX_CENTERS, sigma, seed)
        phi = design_matrix(basis, points)
        scores = np.zeros(ridge_grid.size)
        for fold in range(folds):
            train = fold_of != fold
            hold = ~train
            phi_den = phi[train & (labels == 0)]
            h = phi[train & (labels == 1)].sum(axis=0)
            gram = phi_den.T @ phi_den
            phi_hold = phi[hold]
            labels_hold = labels[hold]
            for k, ridge in enumerate(ridge_grid):
                reg = gram.copy()
                reg[np.diag_indices_from(reg)] += ridge
                theta = np.linalg.solve(reg, h)
                scores[k] += _holdout_objective(phi_hold @ theta, labels_hold)
        scores /= folds
        for k, ridge in enumerate(ridge_grid):
            if not np.isfinite(scores[k]):
                continue
            if best is None or scores[k] < best[2]:
                best = (float(sigma), float(ridge), float(scores[k]))
    if best is None:
        raise ValueError("cross-validation produced no finite score")
    return best
