"""One-variable Bergman and Hardy norms, dilations and the disc inequalities.

Norms are available in two independent forms: the coefficient formula for
p = 2, and quadrature against dm_alpha for any p > 0.  Gap functions return
``Estimate(value, error)`` where ``error`` bounds the quadrature error so that
inequality verdicts can allow for it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .arithmetic import binom_coeffs
from .quadrature import (
    DiscQuadrature,
    Estimate,
    check_exactness,
    circle_means,
    exact_rule,
    is_even_integer,
)

ALPHA_0 = (1 + math.sqrt(17)) / 4

_EPS = np.finfo(float).eps


@dataclass(frozen=True, eq=False)
class DiscPolynomial:
    """Analytic polynomial sum_j a_j w^j."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.coeffs, dtype=complex)).copy()
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if len(c) == 0:
            c = np.zeros(1, dtype=complex)
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[-1]) if len(nz) else 0

    @property
    def order_at_zero(self) -> int:
        nz = np.flatnonzero(self.coeffs)
        return int(nz[0]) if len(nz) else 0

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def trimmed(self) -> "DiscPolynomial":
        return DiscPolynomial(self.coeffs[: self.degree + 1])

    def __call__(self, w):
        return np.polynomial.polynomial.polyval(w, self.coeffs)

    def derivative(self) -> "DiscPolynomial":
        c = self.coeffs
        return DiscPolynomial(c[1:] * np.arange(1, len(c)))

    def roots(self) -> np.ndarray:
        c = self.trimmed().coeffs
        if len(c) <= 1:
            return np.zeros(0, dtype=complex)
        return np.roots(c[::-1])

    def __add__(self, other):
        other = as_polynomial(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = np.zeros(n, dtype=complex)
        a[: len(self.coeffs)] += self.coeffs
        a[: len(other.coeffs)] += other.coeffs
        return DiscPolynomial(a)

    def __mul__(self, other):
        if np.isscalar(other):
            return DiscPolynomial(self.coeffs * other)
        other = as_polynomial(other)
        return DiscPolynomial(np.convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DiscPolynomial):
            return NotImplemented
        return np.array_equal(self.trimmed().coeffs, other.trimmed().coeffs)

    __hash__ = None


def as_polynomial(f) -> DiscPolynomial:
    return f if isinstance(f, DiscPolynomial) else DiscPolynomial(f)


@dataclass(frozen=True)
class SpaceParams:
    p: float
    alpha: float

    def __post_init__(self):
        if not (self.p > 0 and math.isfinite(self.p)):
            raise ValueError("p must be positive")
        if not self.alpha >= 1:
            raise ValueError("alpha must be >= 1")

    @property
    def is_hardy(self) -> bool:
        return self.alpha == 1


def norm_a2alpha_coeff(f, alpha: float) -> float:
    """(sum_j |a_j|^2 / c_alpha(j))^(1/2)."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    c = as_polynomial(f).coeffs
    return float(np.sqrt(np.sum(np.abs(c) ** 2 / binom_coeffs(alpha, len(c)))))


# --- quadrature norms -------------------------------------------------------

# caps for the adaptive rule on non-even exponents
_MAX_RADIAL = 64
_MAX_ANGULAR = 8192
_MAX_ANGULAR_HARDY = 1 << 18


def _moment(coeffs: np.ndarray, p: float, quad: DiscQuadrature) -> float:
    return quad.integrate(np.abs(quad.sample(coeffs)) ** p)


def _breaks(g: np.ndarray) -> tuple:
    """Squared moduli of the zeros of g inside the disc, merged when very close."""
    if len(g) <= 1:
        return ()
    t = np.sort(np.abs(np.roots(g[::-1])) ** 2)
    out = []
    for x in t:
        if 1e-8 < x < 1 - 1e-8 and (not out or x - out[-1] > 1e-6):
            out.append(float(x))
    return tuple(out)


def _adaptive_moment(g, p, alpha, b, tol_moment) -> Estimate:
    D = len(g) - 1
    M0 = max(64, 4 * D + 8)
    if alpha == 1:
        m, e = circle_means(g, [1.0], p, M0, tol_moment(1.0) / 4, _MAX_ANGULAR_HARDY)
        return Estimate(float(m[0]), float(e[0]) + 64 * _EPS * float(m[0]))
    breaks = _breaks(g)

    def level(n, target):
        quad = DiscQuadrature(alpha, n, 1, b, breaks)
        m, e = circle_means(g, quad.radii, p, M0, target / 2, _MAX_ANGULAR)
        return float(quad.weights @ m), float(quad.weights @ e)

    # the radial refinement stops on its own criterion; angular errors that
    # remain at the node cap are reported rather than chased
    n = 16
    prev, _ = level(n, tol_moment(abs(g[0]) ** p))
    while True:
        n *= 2
        cur, ang = level(n, tol_moment(prev))
        rad = abs(cur - prev)
        if rad <= tol_moment(cur) / 2 or n >= _MAX_RADIAL:
            return Estimate(cur, rad + ang + 64 * _EPS * cur)
        prev = cur


def moment_estimate(f, p: float, alpha: float, quad: DiscQuadrature | None = None, *, tol=1e-10):
    """int |f|^p dm_alpha with an error estimate.

    With an explicit ``quad`` the rule is used as given; for even p its
    exactness is checked first.  Otherwise an exact rule is built for even p,
    and for other p the node counts are doubled until two successive values
    agree to ``tol`` (absolute, on the norm) or the node caps are reached.
    """
    SpaceParams(p, alpha)
    f = as_polynomial(f)
    if f.is_zero():
        return Estimate(0.0, 0.0)
    c = f.trimmed().coeffs
    even = is_even_integer(p)
    if quad is not None:
        if quad.alpha != alpha:
            raise ValueError("quadrature weight does not match alpha")
        if quad.origin_power != 0:
            raise ValueError("explicit rules must have origin_power 0")
        if even:
            check_exactness(quad, len(c) - 1, p)
            val = _moment(c, p, quad)
            return Estimate(val, 64 * _EPS * val)
        val = _moment(c, p, quad)
        coarse = DiscQuadrature(alpha, max(1, quad.n_radial // 2), max(1, quad.n_angular // 2))
        return Estimate(val, abs(val - _moment(c, p, coarse)))

    # a zero of order k at the origin becomes part of the radial weight
    k = 0 if alpha == 1 else f.order_at_zero
    g, b = c[k:], k * p / 2
    D = len(g) - 1
    if even:
        val = _moment(g, p, exact_rule(alpha, D, p, origin_power=b))
        return Estimate(val, 64 * _EPS * val)

    def tol_moment(value):
        # d(I) = p I^(1 - 1/p) d(norm)
        return tol * p * max(value, 1e-300) ** (1 - 1 / p)

    return _adaptive_moment(g, p, alpha, b, tol_moment)


def _moment_to_norm(m: Estimate, p: float) -> Estimate:
    if m.value <= 0:
        return Estimate(0.0, m.error ** (1 / p))
    val = m.value ** (1 / p)
    return Estimate(val, val / p * m.error / m.value)


def norm_estimate(f, p: float, alpha: float, quad: DiscQuadrature | None = None, *, tol=1e-10) -> Estimate:
    """||f||_{A^p_alpha} by quadrature, with error estimate."""
    return _moment_to_norm(moment_estimate(f, p, alpha, quad, tol=tol), p)


def norm_quad(f, params: SpaceParams | float, alpha: float | None = None, quad=None, *, tol=1e-10) -> float:
    """(int |f|^p dm_alpha)^(1/p); ``params`` is a SpaceParams or p with ``alpha`` given."""
    if isinstance(params, SpaceParams):
        p, a = params.p, params.alpha
    else:
        if alpha is None:
            raise TypeError("alpha is required when params is a number")
        p, a = float(params), float(alpha)
    return norm_estimate(f, p, a, quad, tol=tol).value


def dilate(f, r: float) -> DiscPolynomial:
    """P_r f(w) = f(r w)."""
    if not 0 <= r <= 1:
        raise ValueError("r must lie in [0, 1]")
    c = as_polynomial(f).coeffs
    return DiscPolynomial(c * r ** np.arange(len(c)))


def _diff(a: Estimate, b: Estimate) -> Estimate:
    return Estimate(a.value - b.value, a.error + b.error)


def weissler_gap(f, p: float, q: float, alpha: float, r: float, quad=None, *, tol=1e-10) -> Estimate:
    """||P_r f||_{A^q_alpha} - ||f||_{A^p_alpha}."""
    if not 0 < p <= q:
        raise ValueError("need 0 < p <= q")
    return _diff(
        norm_estimate(dilate(f, r), q, alpha, quad, tol=tol),
        norm_estimate(f, p, alpha, quad, tol=tol),
    )


def weissler_threshold(p: float, q: float) -> float:
    return math.sqrt(p / q)


def weissler_expansion(p: float, q: float, alpha: float, r: float, eps: float) -> float:
    """Second-order prediction of the gap for f = 1 + eps w."""
    return (q * r * r - p) / (4 * alpha) * eps * eps


def carleman_exponent(p: float, alpha: float) -> float:
    return p * (alpha + 1) / alpha


def carleman_gap(f, p: float, alpha: float, quad=None, *, tol=1e-10) -> Estimate:
    """||f||_{A^{p(alpha+1)/alpha}_{alpha+1}} - ||f||_{A^p_alpha}."""
    SpaceParams(p, alpha)
    return _diff(
        norm_estimate(f, carleman_exponent(p, alpha), alpha + 1, tol=tol),
        norm_estimate(f, p, alpha, quad, tol=tol),
    )


def contractive_gap(f, p: float, q: float, alpha: float, beta: float, *, tol=1e-10) -> Estimate:
    """||f||_{A^q_beta} - ||f||_{A^p_alpha} for arbitrary exponents (exploratory)."""
    return _diff(norm_estimate(f, q, beta, tol=tol), norm_estimate(f, p, alpha, tol=tol))


def chain_norms(f, upto: int = 4, *, tol=1e-10) -> list[Estimate]:
    """[||f||_{A^k_k} for k = 1..upto]."""
    return [norm_estimate(f, k, k, tol=tol) for k in range(1, upto + 1)]


def hlin_gap(f, n: int, *, tol=1e-10) -> Estimate:
    """(sum |a_j|^2 / c_{n+2}(j))^(1/2) - ||f||_{H^p} with p = 2/(1 + n/2)."""
    p = 2 / (1 + n / 2)
    lhs = norm_a2alpha_coeff(f, n + 2)
    rhs = norm_estimate(f, p, 1, tol=tol)
    return Estimate(lhs - rhs.value, rhs.error + 64 * _EPS * lhs)


def embedding_gap(f, alpha: float, *, tol=1e-10) -> Estimate:
    """||f||_{A^4_{2 alpha}} - ||f||_{A^2_alpha}."""
    return _diff(norm_estimate(f, 4, 2 * alpha, tol=tol), norm_estimate(f, 2, alpha, tol=tol))


def pointwise_bound_gap(f, p: float, alpha: float, w: complex, quad=None, *, tol=1e-10) -> Estimate:
    """(1 - |w|^2)^(-alpha/p) ||f||_{A^p_alpha} - |f(w)|; non-negative."""
    if not abs(w) < 1:
        raise ValueError("need |w| < 1")
    f = as_polynomial(f)
    nrm = norm_estimate(f, p, alpha, quad, tol=tol)
    scale = (1 - abs(w) ** 2) ** (-alpha / p)
    return Estimate(scale * nrm.value - abs(f(w)), scale * nrm.error)


# --- extremizers ------------------------------------------------------------


def extremizer(xi: complex, C: complex, alpha: float, p: float, degree: int) -> DiscPolynomial:
    """Taylor truncation of C / (1 - conj(xi) w)^(2 alpha / p)."""
    if not abs(xi) < 1:
        raise ValueError("need |xi| < 1")
    j = np.arange(degree + 1)
    return DiscPolynomial(C * binom_coeffs(2 * alpha / p, degree + 1) * np.conj(xi) ** j)


def extremizer_tail_bound(xi: complex, C: complex, alpha: float, p: float, degree: int) -> float:
    """sum_{j > degree} |C|^2 c_s(j)^2 |xi|^(2j) / c_alpha(j), with s = 2 alpha / p.

    Summed explicitly for a long stretch, then closed with a geometric bound
    using the largest remaining term ratio.
    """
    x = abs(xi) ** 2
    if x == 0:
        return 0.0
    s = 2 * alpha / p
    span = 4000
    j = np.arange(degree + 1, degree + 1 + span, dtype=float)
    # log c_s(j) = lgamma(j+s) - lgamma(s) - lgamma(j+1)
    from scipy.special import gammaln

    log_cs = gammaln(j + s) - gammaln(s) - gammaln(j + 1)
    log_ca = gammaln(j + alpha) - gammaln(alpha) - gammaln(j + 1)
    logs = 2 * log_cs - log_ca + j * math.log(x)
    terms = np.exp(logs)
    J = j[-1]
    ratio = x * max(1.0, ((J + s) / (J + 1)) ** 2 * (J + 1) / (J + alpha))
    if ratio >= 1:
        return math.inf
    return float(abs(C) ** 2 * (terms.sum() + terms[-1] * ratio / (1 - ratio)))


# --- hyperbolic identity ----------------------------------------------------


class IdentityResidual(NamedTuple):
    residual: float
    lhs: float
    rhs: float
    error: float


def min_modulus_on_closed_disc(f, samples: int = 4096) -> float:
    """Minimum of |f| sampled on the unit circle, or 0 if a zero lies in the closed disc."""
    f = as_polynomial(f)
    roots = f.roots()
    if len(roots) and np.min(np.abs(roots)) <= 1:
        return 0.0
    theta = 2 * np.pi * np.arange(samples) / samples
    return float(np.min(np.abs(f(np.exp(1j * theta)))))


def carlen_identity_residual(f, p: float, beta: float, n_radial: int = 48, n_angular: int | None = None) -> IdentityResidual:
    """Both sides of the hyperbolic-gradient identity for u = |f|^p (1 - |w|^2)^beta.

    lhs = int |du/d(conj w)|^2 dm, rhs = (beta/2) int |f|^(2p) (1-|w|^2)^(2 beta - 2) dm.
    Both are integrated against dm_{2 beta} after pulling out (1-|w|^2)^(2 beta - 2).
    """
    if not p > 0:
        raise ValueError("p must be positive")
    if not beta > 0.5:
        raise ValueError("beta must exceed 1/2")
    f = as_polynomial(f)
    if min_modulus_on_closed_disc(f) < 1e-3:
        raise ValueError("f must be zero-free on the closed disc with min |f| >= 1e-3")
    D = f.degree
    if n_angular is None:
        n_angular = max(128, 16 * D + 16)
    c = f.coeffs
    dc = f.derivative().coeffs

    def sides(nr, na):
        quad = DiscQuadrature(2 * beta, nr, na)
        fv = quad.sample(c)
        dv = quad.sample(dc)
        t = (quad.radii**2)[:, None]
        w = quad.points()
        mod = np.abs(fv)
        grad = (p / 2) * mod ** (p - 2) * fv * np.conj(dv) * (1 - t) - beta * w * mod**p
        scale = 1 / (2 * beta - 1)
        lhs = scale * quad.integrate(np.abs(grad) ** 2)
        rhs = scale * beta / 2 * quad.integrate(mod ** (2 * p))
        return lhs, rhs

    l1, r1 = sides(n_radial, n_angular)
    l0, r0 = sides(max(1, n_radial // 2), max(1, n_angular // 2))
    err = abs(l1 - l0) + abs(r1 - r0)
    return IdentityResidual(abs(l1 - r1), l1, r1, err)


# --- sphere slices ----------------------------------------------------------


class SliceResidual(NamedTuple):
    residual: float
    stderr: float
    sphere_mean: float
    disc_value: float


def sphere_slice_residual(radial_coeffs, n: int, samples: int, seed: int = 0) -> SliceResidual:
    """Compare the sphere average of h(x_1 + i x_2) on S^n with int h dm_{(n+1)/2}.

    ``radial_coeffs`` b_k describe h(w) = sum_k b_k |w|^(2k).  The disc side
    uses the exact moments 1 / c_alpha(k); the sphere side is Monte Carlo with
    a fixed seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    b = np.asarray(radial_coeffs, dtype=float)
    alpha = (n + 1) / 2
    disc_value = float(np.sum(b / binom_coeffs(alpha, len(b))))
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, n + 1))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    rho = x[:, 0] ** 2 + x[:, 1] ** 2
    h = np.polynomial.polynomial.polyval(rho, b)
    mean = float(h.mean())
    stderr = float(h.std(ddof=1) / math.sqrt(samples)) if samples > 1 else math.inf
    return SliceResidual(abs(mean - disc_value), stderr, mean, disc_value)


# --- random ensembles -------------------------------------------------------


def random_polynomial(rng: np.random.Generator, max_degree: int = 15, degree: int | None = None) -> DiscPolynomial:
    """Coefficients with real and imaginary parts uniform on [-1, 1]."""
    if degree is None:
        degree = int(rng.integers(0, max_degree + 1))
    size = degree + 1
    return DiscPolynomial(rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size))


def random_suite(count: int, seed: int, max_degree: int = 15) -> list[DiscPolynomial]:
    rng = np.random.default_rng(seed)
    return [random_polynomial(rng, max_degree) for _ in range(count)]
