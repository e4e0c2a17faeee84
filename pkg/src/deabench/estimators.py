"""scikit-learn wrappers around the DEA models."""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .dea import bod_lp, envelopment_lp
from .validation import check_inputs_outputs, check_positive_matrix, check_rts, check_weight_floor


class BenefitOfTheDoubt(TransformerMixin, BaseEstimator):
    """Multiplicative benefit-of-the-doubt composite indicator.

    ``fit`` stores the reference set and scores it; ``transform`` scores any
    rows against that reference set and returns an ``(n, 1)`` column.

    Parameters
    ----------
    weight_floor : float, default 0.0
        Lower bound on every indicator weight; must be below ``1 / n_features``.

    Attributes
    ----------
    scores_ : ndarray of shape (n_samples,)
    weights_ : ndarray of shape (n_samples, n_features)
        Weights realising each training unit's score.
    """

    def __init__(self, weight_floor: float = 0.0):
        self.weight_floor = weight_floor

    def fit(self, X, y=None):
        X = check_positive_matrix(X)
        floor = check_weight_floor(self.weight_floor, X.shape[1])
        self.reference_ = X
        self.n_features_in_ = X.shape[1]
        res = [bod_lp(X, o, floor) for o in range(X.shape[0])]
        self.scores_ = np.exp([t for t, _ in res])
        self.weights_ = np.vstack([w for _, w in res])
        return self

    def score_samples(self, X) -> np.ndarray:
        check_is_fitted(self, "reference_")
        X = check_positive_matrix(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        out = np.empty(X.shape[0])
        for i, row in enumerate(X):
            stacked = np.vstack([self.reference_, row])
            t, _ = bod_lp(stacked, stacked.shape[0] - 1, self.weight_floor)
            out[i] = np.exp(t)
        return out

    def transform(self, X):
        return self.score_samples(X)[:, None]

    def fit_transform(self, X, y=None, **fit_params):
        return self.fit(X).scores_[:, None]


class InputOrientedDEA(BaseEstimator):
    """Input-oriented envelopment efficiency (CCR for ``rts="CRS"``, BCC for ``"VRS"``).

    ``fit(X, y)`` takes inputs ``X`` of shape ``(n, m)`` and outputs ``y`` of
    shape ``(n, s)``; the training units form the frontier.
    """

    def __init__(self, rts: str = "CRS"):
        self.rts = rts

    def fit(self, X, y):
        x, Y = check_inputs_outputs(X, y)
        mode = check_rts(self.rts)
        n = x.shape[0]
        self.inputs_, self.outputs_ = x, Y
        self.n_features_in_ = x.shape[1]
        self.efficiency_ = np.empty(n)
        self.lambdas_ = np.empty((n, n))
        for o in range(n):
            theta, lam = envelopment_lp(x, Y, o, mode)
            self.efficiency_[o] = min(theta, 1.0)
            self.lambdas_[o] = lam
        return self

    @property
    def peers_(self) -> list[list[int]]:
        check_is_fitted(self, "lambdas_")
        return [[int(i) for i in np.flatnonzero(row > 1e-9)] for row in self.lambdas_]

    def evaluate(self, X, y) -> np.ndarray:
        """Efficiency of new units against the fitted frontier.

        Not clipped: a unit outside the frontier's hull scores above 1 under
        CRS, and a VRS problem may be infeasible (returned as ``nan``).
        """
        check_is_fitted(self, "inputs_")
        x, Y = check_inputs_outputs(X, y)
        mode = check_rts(self.rts)
        return np.array([envelopment_lp(x, Y, o, mode, reference=(self.inputs_, self.outputs_))[0]
                         for o in range(x.shape[0])])
