"""scikit-learn style wrappers: orbit classifiers and the blade/wedge charts.

Inputs are (n_samples, 2) arrays of plane points. ``fit`` only validates
hyper-parameters; there is nothing to learn, but the estimator protocol
lets the classifiers and charts sit inside pipelines and grid searches.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import a3
from .core import ExtPoint, check_param
from .regions import (AdaptedCoords, ClassifierConfig, OrbitTag, adapted_from, adapted_to,
                      classify_points)


def check_points(X, allow_inf: bool = False) -> np.ndarray:
    """Validate an (n, 2) float array of points; NaN is always rejected."""
    X = check_array(X, dtype=float, ensure_all_finite=not allow_inf)
    if X.shape[1] != 2:
        raise ValueError(f"expected points with 2 coordinates, got shape {X.shape}")
    if np.isnan(X).any():
        raise ValueError("NaN is not a point of P^1")
    return X


class OrbitClassifier(BaseEstimator):
    """Forward (or backward) orbit fate of each row; ``predict`` returns OrbitTag codes."""

    def __init__(self, a=2.0, n_max=1000, inverse=False, box_factor=4.0, eps_margin=1e-9,
                 eps_ind=1e-12):
        self.a = a
        self.n_max = n_max
        self.inverse = inverse
        self.box_factor = box_factor
        self.eps_margin = eps_margin
        self.eps_ind = eps_ind

    def fit(self, X=None, y=None):
        check_param(self.a)
        if int(self.n_max) < 1:
            raise ValueError("n_max must be >= 1")
        self.config_ = ClassifierConfig(int(self.n_max), float(self.box_factor),
                                        float(self.eps_margin), float(self.eps_ind))
        return self

    def predict(self, X):
        check_is_fitted(self, "config_")
        X = check_points(X, allow_inf=True)
        tags, n_exit = classify_points(float(self.a), X[:, 0], X[:, 1], self.config_,
                                       inverse=bool(self.inverse))
        self.n_exit_ = n_exit
        return tags

    def predict_labels(self, X):
        return np.array([OrbitTag(t).label for t in self.predict(X)])


class BiorbitClassifier(OrbitClassifier):
    """Both directions: ``predict`` returns an (n, 2) array of (forward, backward) codes."""

    def __init__(self, a=2.0, n_max=1000, box_factor=4.0, eps_margin=1e-9, eps_ind=1e-12):
        super().__init__(a, n_max, False, box_factor, eps_margin, eps_ind)

    def predict(self, X):
        check_is_fitted(self, "config_")
        X = check_points(X, allow_inf=True)
        fwd, _ = classify_points(float(self.a), X[:, 0], X[:, 1], self.config_)
        bwd, _ = classify_points(float(self.a), X[:, 0], X[:, 1], self.config_, inverse=True)
        return np.column_stack([fwd, bwd])

    def in_K(self, X):
        """Rows whose orbit is a bounded candidate in both directions."""
        t = self.predict(X)
        return (t[:, 0] == OrbitTag.BOUNDED) & (t[:, 1] == OrbitTag.BOUNDED)


class BladeChart(TransformerMixin, BaseEstimator):
    """Adapted coordinates psi_j on blade S_j (j = 1..4)."""

    def __init__(self, a=2.0, blade=1):
        self.a = a
        self.blade = blade

    def fit(self, X=None, y=None):
        check_param(self.a)
        if self.blade not in (1, 2, 3, 4):
            raise ValueError(f"blade must be 1..4, got {self.blade}")
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_points(X)
        out = np.empty_like(X)
        for k, (x, y) in enumerate(X):
            c = adapted_to(self.blade, float(self.a), ExtPoint(x, y))
            out[k] = c.u, c.v
        return out

    def inverse_transform(self, C):
        check_is_fitted(self, "n_features_in_")
        C = check_points(C)
        out = np.empty_like(C)
        for k, (u, v) in enumerate(C):
            p = adapted_from(self.blade, float(self.a), AdaptedCoords(self.blade, u, v))
            out[k] = p.x, p.y
        return out


class WedgeChart(TransformerMixin, BaseEstimator):
    """Wedge coordinates Psi_w at a = 3 (w = 0, 1, 2)."""

    def __init__(self, wedge=0):
        self.wedge = wedge

    def fit(self, X=None, y=None):
        if self.wedge not in (0, 1, 2):
            raise ValueError(f"wedge must be 0, 1 or 2, got {self.wedge}")
        self.n_features_in_ = 2
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_points(X)
        if not np.all(a3.wedge_mask(self.wedge, X[:, 0], X[:, 1]) | _near(self.wedge, X)):
            raise ValueError(f"some points are not in W{self.wedge}")
        u, v = a3.chart_array(self.wedge, X[:, 0], X[:, 1])
        return np.column_stack([u, v])

    def inverse_transform(self, C):
        check_is_fitted(self, "n_features_in_")
        C = check_points(C)
        x, y = a3.unchart_array(self.wedge, C[:, 0], C[:, 1])
        return np.column_stack([x, y])


def _near(w, X):
    return np.array([a3._near_wedge(w, x, y, 1e-9) for x, y in X], dtype=bool)
