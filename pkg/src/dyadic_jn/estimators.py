"""Thin scikit-learn style wrappers.

Each row of ``X`` is the flat, row-major cell array of one step function on
the unit root cube at the configured ``dim`` and ``depth``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from ._validation import check_is_fitted, check_step_array
from .czd import cz_decompose
from .errors import ValidationError
from .grid import StepFunction, make_grid
from .maximal import maximal_avg, maximal_median
from .seminorm import SeminormConfig, jn_seminorm


class _GridEstimator(BaseEstimator):
    def _functions(self, X):
        X = check_step_array(X, self.dim, self.depth)
        grid = make_grid(self.dim, self.depth)
        return [StepFunction(grid, row) for row in X]


class DyadicMaximalTransformer(TransformerMixin, _GridEstimator):
    """Maps each row to its dyadic maximal function (``kind="avg"`` or ``"median"``)."""

    def __init__(self, dim: int = 1, depth: int = 4, kind: str = "avg", t: float = 0.5):
        self.dim = dim
        self.depth = depth
        self.kind = kind
        self.t = t

    def fit(self, X, y=None):
        if self.kind not in ("avg", "median"):
            raise ValidationError(f"kind must be 'avg' or 'median', got {self.kind!r}")
        check_step_array(X, self.dim, self.depth)
        self.n_features_in_ = 2 ** (self.dim * self.depth)
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        if self.kind == "avg":
            return np.vstack([maximal_avg(f).as_array() for f in self._functions(X)])
        return np.vstack([maximal_median(f, self.t).as_array() for f in self._functions(X)])


class JNSeminorm(TransformerMixin, _GridEstimator):
    """Exact dyadic John–Nirenberg seminorm of each row, as a column vector.

    ``fit`` keeps the full reports in ``reports_`` and the values in ``values_``.
    """

    def __init__(self, dim: int = 1, depth: int = 4, p: float = 2.0, mode: str = "avg-mean", s=None, t=None):
        self.dim = dim
        self.depth = depth
        self.p = p
        self.mode = mode
        self.s = s
        self.t = t

    def _config(self) -> SeminormConfig:
        return SeminormConfig(self.p, self.mode, self.s, self.t)

    def fit(self, X, y=None):
        cfg = self._config()
        self.reports_ = [jn_seminorm(f, cfg) for f in self._functions(X)]
        self.values_ = np.array([r.value for r in self.reports_])
        return self

    def transform(self, X):
        check_is_fitted(self, "reports_")
        cfg = self._config()
        return np.array([[jn_seminorm(f, cfg).value] for f in self._functions(X)])


class MedianCZ(_GridEstimator):
    """Median Calderón–Zygmund cubes of a single function; ``predict`` flags covered cells."""

    def __init__(self, dim: int = 1, depth: int = 4, t: float = 0.5, lam: float = 1.0):
        self.dim = dim
        self.depth = depth
        self.t = t
        self.lam = lam

    def fit(self, X, y=None):
        fs = self._functions(X)
        if len(fs) != 1:
            raise ValidationError(f"MedianCZ fits one function at a time, got {len(fs)} rows")
        self.function_ = fs[0]
        self.cubes_ = cz_decompose(fs[0], self.t, self.lam).cubes
        self.measure_ = self.cubes_.measure(fs[0].grid)
        return self

    def predict(self, X=None):
        check_is_fitted(self, "cubes_")
        return self.cubes_.cell_mask(self.function_.grid)
