"""scikit-learn style wrappers.

Rows of ``X`` are support vectors ``p`` of polygons that share one set of
directions ``alpha`` (equiangular by default), so these transformers fit into
ordinary pipelines.  ``fit`` only validates and caches the direction-dependent
matrices; nothing is learned from the data.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_angles, check_positive_int, check_supports
from .dynamics import normalize
from .geometry import Polygon
from .harmonics import decompose_support, harmonic_support, standard_angles
from .p_evolute import p_matrix


def _directions(alpha, n):
    return standard_angles(n) if alpha is None else check_angles(alpha, n)


class PEvoluteTransformer(TransformerMixin, BaseEstimator):
    """Support vectors of the ``steps``-th P-evolute."""

    def __init__(self, alpha=None, steps: int = 1):
        self.alpha = alpha
        self.steps = steps

    def fit(self, X, y=None):
        X = check_supports(X)
        steps = check_positive_int(self.steps, "steps")
        self.n_features_in_ = X.shape[1]
        self.alpha_ = _directions(self.alpha, X.shape[1])
        theta = np.angle(np.exp(1j * (np.roll(self.alpha_, -1) - self.alpha_)))
        self.matrix_ = np.linalg.matrix_power(p_matrix(theta).entries, steps)
        return self

    def transform(self, X):
        check_is_fitted(self, "matrix_")
        X = check_supports(X, self.n_features_in_)
        return X @ self.matrix_.T


class HarmonicDecomposer(TransformerMixin, BaseEstimator):
    """Discrete Fourier coefficients ``[a0, a1, b1, a2, b2, ...]`` of each support vector.

    For even ``n`` the last column is the alternating coefficient.
    """

    def fit(self, X, y=None):
        X = check_supports(X)
        self.n_features_in_ = X.shape[1]
        self.orders_ = list(range(1, (X.shape[1] - 1) // 2 + 1))
        return self

    def transform(self, X):
        check_is_fitted(self, "orders_")
        X = check_supports(X, self.n_features_in_)
        rows = []
        for p in X:
            dec = decompose_support(p)
            row = [dec.a0]
            for m in self.orders_:
                row.extend(dec.coefficient(m))
            if dec.a_half is not None:
                row.append(dec.a_half)
            rows.append(row)
        return np.array(rows)

    def inverse_transform(self, C):
        check_is_fitted(self, "orders_")
        C = np.asarray(C, dtype=float)
        n = self.n_features_in_
        out = np.tile(C[:, :1] / 2.0, (1, n))
        for i, m in enumerate(self.orders_):
            a, b = C[:, 1 + 2 * i : 2 + 2 * i], C[:, 2 + 2 * i : 3 + 2 * i]
            out += a * harmonic_support(n, m, "cos") + b * harmonic_support(n, m, "sin")
        if n % 2 == 0:
            out += C[:, -1:] / 2.0 * harmonic_support(n, n // 2, "cos")
        return out


class PolygonNormalizer(TransformerMixin, BaseEstimator):
    """Translate the vertex centroid to the origin and scale the farthest vertex to 1."""

    def __init__(self, alpha=None):
        self.alpha = alpha

    def fit(self, X, y=None):
        X = check_supports(X)
        self.n_features_in_ = X.shape[1]
        self.alpha_ = _directions(self.alpha, X.shape[1])
        return self

    def transform(self, X):
        check_is_fitted(self, "alpha_")
        X = check_supports(X, self.n_features_in_)
        return np.array([normalize(Polygon(self.alpha_, p)).p for p in X])
