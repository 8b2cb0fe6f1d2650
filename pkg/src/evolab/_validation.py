"""Input checks shared by the estimator layer and the CLI."""

from __future__ import annotations

import numpy as np

from .errors import EmptyInput


def check_supports(X, n: int | None = None) -> np.ndarray:
    """2-D float array of support vectors, one polygon per row."""
    X = np.asarray(X, dtype=float)
    if X.ndim == 1:
        X = X[None, :]
    if X.ndim != 2:
        raise ValueError(f"expected a 2-D array of support vectors, got shape {X.shape}")
    if X.shape[0] == 0:
        raise EmptyInput("no samples")
    if X.shape[1] < 3:
        raise ValueError("polygons need at least 3 sides")
    if n is not None and X.shape[1] != n:
        raise ValueError(f"expected {n} support numbers per row, got {X.shape[1]}")
    if not np.all(np.isfinite(X)):
        raise ValueError("support numbers must be finite")
    return X


def check_angles(alpha, n: int) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float).ravel()
    if alpha.size != n:
        raise ValueError(f"expected {n} angles, got {alpha.size}")
    if not np.all(np.isfinite(alpha)):
        raise ValueError("angles must be finite")
    return alpha


def check_positive_int(value, name: str, minimum: int = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < minimum:
        raise ValueError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)
