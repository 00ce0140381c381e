"""scikit-learn style wrappers around the coefficient-space operators.

Each row of X is one function, written as its coefficient vector: monomial
coefficients a_0..a_D for disc polynomials, a_1..a_N for Dirichlet
polynomials.  Coefficients may be complex, which rules out
``sklearn.utils.check_array``; ``check_coefficients`` plays its role.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .disc import norm_a2alpha_coeff, norm_estimate
from .hankel import HankelSymbol, build_bergman_hankel, build_hardy_hankel, singular_values


def check_coefficients(X, *, min_features: int = 1) -> np.ndarray:
    """2-D finite complex array with at least one row and ``min_features`` columns."""
    arr = np.asarray(X)
    if arr.dtype == object:
        raise TypeError("coefficient arrays must be numeric")
    arr = arr.astype(complex)
    if arr.ndim == 1:
        raise ValueError("expected a 2-D array; reshape a single function with X[None, :]")
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-D array, got {arr.ndim} dimensions")
    if arr.shape[0] < 1:
        raise ValueError("need at least one sample")
    if arr.shape[1] < min_features:
        raise ValueError(f"need at least {min_features} coefficients per row")
    if not np.all(np.isfinite(arr)):
        raise ValueError("coefficients must be finite")
    return arr


def _real_if_possible(arr: np.ndarray) -> np.ndarray:
    return arr.real.copy() if np.all(arr.imag == 0) else arr


class _CoefficientTransformer(TransformerMixin, BaseEstimator):
    def fit(self, X, y=None):
        X = check_coefficients(X)
        self._validate_params_local()
        self.n_features_in_ = X.shape[1]
        return self

    def _validate_params_local(self):
        pass

    def _check(self, X) -> np.ndarray:
        check_is_fitted(self, "n_features_in_")
        X = check_coefficients(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} coefficients, but the transformer was fitted with {self.n_features_in_}"
            )
        return X


class Dilation(_CoefficientTransformer):
    """f(w) -> f(r w) on disc coefficient rows."""

    def __init__(self, r: float = 0.5):
        self.r = r

    def _validate_params_local(self):
        if not 0 <= self.r <= 1:
            raise ValueError("r must lie in [0, 1]")

    def transform(self, X):
        X = self._check(X)
        return _real_if_possible(X * float(self.r) ** np.arange(X.shape[1]))


class DirichletTranslation(_CoefficientTransformer):
    """f(s) -> f(s + eps); column k holds the coefficient of (k + 1)^(-s)."""

    def __init__(self, eps: float = 0.5):
        self.eps = eps

    def _validate_params_local(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")

    def transform(self, X):
        X = self._check(X)
        n = np.arange(1, X.shape[1] + 1, dtype=float)
        return _real_if_possible(X * n ** (-float(self.eps)))


class DiagonalExtension(_CoefficientTransformer):
    """E: disc coefficients of degree D -> flattened (D+1) x (D+1) bidisc coefficients.

    ``inverse_transform`` applies the diagonal restriction D, truncated back to
    degree D, so inverse_transform(transform(X)) == X.
    """

    def transform(self, X):
        X = self._check(X)
        n = X.shape[1]
        j = np.arange(n)
        total = j[:, None] + j[None, :]
        out = np.zeros((X.shape[0], n, n), dtype=complex)
        mask = total < n
        for l in range(n):
            out[:, total == l] = (X[:, l] / (l + 1))[:, None]
        out[:, ~mask] = 0
        return _real_if_possible(out.reshape(X.shape[0], n * n))

    def inverse_transform(self, Y):
        check_is_fitted(self, "n_features_in_")
        n = self.n_features_in_
        Y = check_coefficients(Y)
        if Y.shape[1] != n * n:
            raise ValueError(f"expected {n * n} columns")
        Y = Y.reshape(-1, n, n)
        j = np.arange(n)
        total = j[:, None] + j[None, :]
        out = np.stack([Y[:, total == l].sum(axis=1) for l in range(n)], axis=1)
        return _real_if_possible(out)


class BergmanNorm(_CoefficientTransformer):
    """One column: ||f||_{A^p_alpha} of each row (coefficient formula at p = 2)."""

    def __init__(self, p: float = 2.0, alpha: float = 2.0, tol: float = 1e-10):
        self.p = p
        self.alpha = alpha
        self.tol = tol

    def _validate_params_local(self):
        if not self.p > 0:
            raise ValueError("p must be positive")
        if not self.alpha >= 1:
            raise ValueError("alpha must be >= 1")

    def transform(self, X):
        X = self._check(X)
        if self.p == 2:
            vals = [norm_a2alpha_coeff(row, self.alpha) for row in X]
        else:
            vals = [norm_estimate(row, self.p, self.alpha, tol=self.tol).value for row in X]
        return np.asarray(vals)[:, None]


class HankelSpectrum(_CoefficientTransformer):
    """Rows are disc symbols rho_0..rho_K; output the n_basis leading singular values."""

    def __init__(self, n_basis: int = 8, scheme: str = "bergman"):
        self.n_basis = n_basis
        self.scheme = scheme

    def _validate_params_local(self):
        if self.scheme not in ("bergman", "hardy"):
            raise ValueError("scheme must be 'bergman' or 'hardy'")
        if int(self.n_basis) < 1:
            raise ValueError("n_basis must be positive")

    def transform(self, X):
        X = self._check(X)
        build = build_bergman_hankel if self.scheme == "bergman" else build_hardy_hankel
        out = np.empty((X.shape[0], int(self.n_basis)))
        for i, row in enumerate(X):
            sym = HankelSymbol(row, "disc", complete=True)
            out[i] = singular_values(build(sym, int(self.n_basis))).values
        return out
