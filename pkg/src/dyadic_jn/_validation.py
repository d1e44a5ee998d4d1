"""Input checks shared by the estimator wrappers."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError


def check_step_array(X, dim: int, depth: int) -> np.ndarray:
    """Coerce ``X`` to a finite float 2-D array with one step function per row."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValidationError(f"expected a 2-D array of cell values, got ndim={X.ndim}")
    n_cells = 2 ** (dim * depth)
    if X.shape[1] != n_cells:
        raise ValidationError(f"rows must hold {n_cells} cell values for dim={dim}, depth={depth}; got {X.shape[1]}")
    bad = np.argwhere(~np.isfinite(X))
    if bad.size:
        r, c = bad[0]
        raise ValidationError(f"non-finite value at row {r}, cell {c}")
    return X


def check_is_fitted(est, attr: str) -> None:
    if not hasattr(est, attr):
        raise ValidationError(f"{type(est).__name__} is not fitted; call fit first")
