"""Real-argument zeta, gamma and beta functions."""

from __future__ import annotations

import math

import numpy as np

# B_2, B_4, ..., B_24
_BERNOULLI = (
    1 / 6,
    -1 / 30,
    1 / 42,
    -1 / 30,
    5 / 66,
    -691 / 2730,
    7 / 6,
    -3617 / 510,
    43867 / 798,
    -174611 / 330,
    854513 / 138,
    -236364091 / 2730,
)

_EM_CUTOFF = 16


def _zeta_em(s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    n = _EM_CUTOFF
    k = np.arange(1, n, dtype=float)
    head = np.sum(k[None, :] ** (-s[:, None]), axis=1)
    total = head + n ** (1 - s) / (s - 1) + 0.5 * n ** (-s)
    # rising factorial s(s+1)...(s+2j-2) accumulated alongside (2j)!
    rising = s.copy()
    fact = 2.0
    power = n ** (-s - 1)
    term = np.zeros_like(s)
    for j, b in enumerate(_BERNOULLI, start=1):
        term = b / fact * rising * power
        total = total + term
        rising = rising * (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power = power / (n * n)
    # the Euler-Maclaurin remainder is bounded by the first omitted term,
    # which is smaller than the last included one for these parameters
    return total, np.abs(term)


def zeta_real(s, *, with_error: bool = False):
    """Riemann zeta for real s > 1 (scalar or array).

    Euler-Maclaurin summation with a fixed cutoff; the remainder estimate is
    returned alongside the value when ``with_error`` is set.
    """
    arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(~np.isfinite(arr)) or np.any(arr <= 1):
        raise ValueError("zeta_real requires real s > 1")
    val, err = _zeta_em(arr.ravel())
    val = val.reshape(arr.shape)
    err = err.reshape(arr.shape)
    if np.ndim(s) == 0:
        val, err = float(val[0]), float(err[0])
    if with_error:
        return val, err
    return val


def gamma_real(x: float) -> float:
    if not x > 0:
        raise ValueError("gamma_real requires x > 0")
    return math.gamma(x)


def beta_real(x: float, y: float) -> float:
    if not (x > 0 and y > 0):
        raise ValueError("beta_real requires x, y > 0")
    return math.exp(math.lgamma(x) + math.lgamma(y) - math.lgamma(x + y))
