"""Carleson-measure constants and counterexamples on the polydisc.

Trigonometric polynomials on the torus carry integer multi-indices of either
sign, equivalently positive rationals q = prod p_j^kappa_j.  Their Poisson
extension replaces z^k by w^k for k >= 0 and by conj(w)^|k| for k < 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, NamedTuple

import numpy as np
from scipy.special import roots_jacobi

from .arithmetic import factorize, primes_first
from .disc import norm_estimate
from .polydisc import PolydiscPolynomial, polydisc_norm_estimate
from .quadrature import DiscQuadrature, Estimate, graded_integral, is_even_integer
from .special import beta_real, zeta_real

EPS_FLOOR = 0.01
MAX_PRIMES = 1000


def _trim(kappa) -> tuple:
    k = [int(x) for x in kappa]
    while k and k[-1] == 0:
        k.pop()
    return tuple(k)


def rational_index(q) -> tuple:
    """kappa(q) with kappa_j in Z for a positive rational q."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("q must be positive")
    num, den = factorize(q.numerator), factorize(q.denominator)
    n = max(len(num), len(den))
    return _trim(
        (num[j] if j < len(num) else 0) - (den[j] if j < len(den) else 0) for j in range(n)
    )


def q_plus(kappa) -> int:
    """prod p_j^|kappa_j|."""
    k = _trim(kappa)
    primes = primes_first(max(len(k), 1)).primes
    return math.prod(int(primes[j]) ** abs(e) for j, e in enumerate(k))


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    coeffs: Mapping[tuple, complex]

    def __post_init__(self):
        clean: dict[tuple, complex] = {}
        for k, a in dict(self.coeffs).items():
            k = _trim(k)
            if a != 0:
                clean[k] = clean.get(k, 0) + complex(a)
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_rationals(cls, coeffs: Mapping) -> "TrigPolynomial":
        return cls({rational_index(q): a for q, a in coeffs.items()})

    @property
    def nvars(self) -> int:
        return max((len(k) for k in self.coeffs), default=0)

    def is_analytic(self) -> bool:
        return all(e >= 0 for k in self.coeffs for e in k)

    def l2_norm(self) -> float:
        return math.sqrt(sum(abs(a) ** 2 for a in self.coeffs.values()))


def _ext(w: complex, k: int) -> complex:
    return w**k if k >= 0 else np.conj(w) ** (-k)


def poisson_extend(f: TrigPolynomial, w) -> complex:
    """Value of the Poisson extension at a point w of the polydisc."""
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(w) >= 1):
        raise ValueError("w must lie in the open polydisc")
    total = 0j
    for k, a in f.coeffs.items():
        if len(k) > len(w):
            raise ValueError("point has fewer coordinates than the polynomial")
        total += a * np.prod([_ext(w[j], e) for j, e in enumerate(k)])
    return complex(total)


# --- diagonal restriction below p = 2 -------------------------------------


@dataclass(frozen=True)
class DpNormConstants:
    p: float
    left: float
    right: float
    left_quad: float
    right_quad: float

    @property
    def gap(self) -> float:
        return self.left - self.right

    @property
    def not_contractive(self) -> bool:
        return self.left > self.right


def circle_cos_moment(p: float, n: int = 40) -> float:
    """mean over theta of |(1 + e^(i theta))/2|^p, by Gauss-Jacobi with weight y^p.

    With theta = pi - 2y the integrand is sin(y)^p = y^p (sin y / y)^p, so the
    zero at theta = pi goes into the weight and the rest is smooth.
    """
    x, w = roots_jacobi(n, 0.0, p)
    h = math.pi / 4
    y = h * (1 + x)
    smooth = np.where(y > 0, np.sin(y) / np.where(y > 0, y, 1), 1.0) ** p
    integral = float(np.dot(w, smooth)) * h ** (1 + p)
    return integral * 2 / math.pi


def dpnorm_constants(p: float) -> DpNormConstants:
    """||D f||^p_{A^p} and ||f||^p_{H^p(D^2)} for f = (z1 + z2)/2, 0 < p < 2."""
    if not 0 < p < 2:
        raise ValueError("p must lie in (0, 2)")
    left = 2 / (2 + p)
    right = 2 / (p * beta_real(p / 2, 0.5))
    left_quad = norm_estimate([0, 1], p, 2).value ** p
    return DpNormConstants(p, left, right, left_quad, circle_cos_moment(p))


# --- the L^2 witness --------------------------------------------------------


def dl2_polynomial() -> TrigPolynomial:
    c = 1 / math.sqrt(3)
    return TrigPolynomial({(1,): c, (0, 1): c, (2, -1): c})


def dl2_witness_exact() -> Fraction:
    """int_D |P f(z, z)|^2 dm through the radial profile (2r + r^3)/sqrt 3.

    |P f(z, z)|^2 = (4 r^2 + 4 r^4 + r^6)/3 and int r^(2k) dm = 1/(k + 1).
    """
    profile = {1: 4, 2: 4, 3: 1}
    return sum((Fraction(c, 3 * (k + 1)) for k, c in profile.items()), Fraction(0))


def dl2_witness(n_radial: int = 8, n_angular: int = 16) -> float:
    """The same integral by a product rule, evaluating the Poisson extension directly."""
    f = dl2_polynomial()
    quad = DiscQuadrature(2, n_radial, n_angular)
    pts = quad.points()
    vals = np.vectorize(lambda z: abs(poisson_extend(f, (z, z))) ** 2)(pts)
    return quad.integrate(vals)


# --- diagonal measure on pairs of variables --------------------------------


def _diagonal_restriction(F: PolydiscPolynomial) -> PolydiscPolynomial:
    """G(w1, w2) = F(w1, w1, w2, w2)."""
    if F.nvars > 4:
        raise ValueError("F may use at most four variables")
    out: dict[tuple, complex] = {}
    for k, a in F.coeffs.items():
        k = tuple(k) + (0,) * (4 - len(k))
        key = (k[0] + k[1], k[2] + k[3])
        out[key] = out.get(key, 0) + a
    return PolydiscPolynomial(out)


def _squared_coeff_mass(F: PolydiscPolynomial, power: int, weight=None) -> float:
    G = PolydiscPolynomial({(): 1})
    for _ in range(power):
        G = G * F
    total = 0.0
    for k, a in G.coeffs.items():
        w = 1.0 if weight is None else weight(k)
        total += abs(a) ** 2 * w
    return total


def torus_moment(F: PolydiscPolynomial, p: float, tol: float = 1e-10, max_points: int = 1 << 22) -> Estimate:
    """Mean of |F|^p over the torus by a uniform grid, refined by doubling."""
    used = [j for j in range(F.nvars) if any(len(k) > j and k[j] for k in F.coeffs)]
    if not used:
        return Estimate(abs(F[()]) ** p, 0.0)
    C = F.to_dense()
    C = C.reshape(C.shape)  # keep all axes; unused ones have length 1
    axes = tuple(range(C.ndim))
    M = max(8, 2 * max(C.shape))
    prev = None
    while True:
        shape = tuple(M if C.shape[j] > 1 else 1 for j in axes)
        vals = np.fft.ifftn(C, s=shape, axes=tuple(range(C.ndim))) * np.prod(shape)
        cur = float(np.mean(np.abs(vals) ** p))
        if prev is not None:
            err = abs(cur - prev)
            if err <= tol or np.prod(shape) * 2 ** len(used) > max_points:
                return Estimate(cur, err)
        prev = cur
        M *= 2


def diagonal_measure_gap(F: PolydiscPolynomial, p: float, tol: float = 1e-10) -> Estimate:
    """int |F(z1, z1, z3, z3)|^p dm(z1) dm(z3) - ||F||^p_{H^p(D^4)}."""
    if not p > 0:
        raise ValueError("p must be positive")
    G = _diagonal_restriction(F)
    if is_even_integer(p):
        m = int(p) // 2
        left = _squared_coeff_mass(G, m, lambda k: 1.0 / math.prod(e + 1 for e in k))
        right = _squared_coeff_mass(F, m)
        return Estimate(left - right, 1e-14 * max(left, right, 1.0))
    left = polydisc_norm_estimate(G, p, 2.0)
    left_m = left.value**p
    left_err = p * left.value ** (p - 1) * left.error if left.value else left.error
    right = torus_moment(F, p, tol)
    return Estimate(left_m - right.value, left_err + right.error)


# --- the counterexample measure -------------------------------------------


class Carleson2(NamedTuple):
    eps: float
    nprimes: int | None
    embedding: float
    embedding_error: float
    l2mass: float

    @property
    def ratio(self) -> float:
        return self.embedding / self.l2mass


def _check_eps(eps: float):
    if not EPS_FLOOR <= eps <= 0.5:
        raise ValueError(f"eps must lie in [{EPS_FLOOR}, 1/2]; smaller values are unreliable")


def _prime_array(d: int) -> np.ndarray:
    if not 1 <= d <= MAX_PRIMES:
        raise ValueError(f"number of primes must lie in [1, {MAX_PRIMES}]")
    return np.asarray(primes_first(d).primes, dtype=float)


def carleson2_l2mass(eps: float, d: int | None = None) -> float:
    """prod_{j<=d} (1 - p^(-2-4eps)) / (1 - p^(-1-2eps))^2; d=None is the full product."""
    _check_eps(eps)
    if d is None:
        return zeta_real(1 + 2 * eps) ** 2 / zeta_real(2 + 4 * eps)
    p = _prime_array(d)
    return float(np.exp(np.sum(np.log1p(-(p ** (-2 - 4 * eps))) - 2 * np.log1p(-(p ** (-1 - 2 * eps))))))


def two_omega_series(x, d: int | None = None) -> np.ndarray:
    """sum over p_d-smooth n of 2^omega(n) n^(-x), as a finite Euler product."""
    x = np.asarray(x, dtype=float)
    if d is None:
        return zeta_real(x) ** 2 / zeta_real(2 * x)
    p = _prime_array(d)
    t = p[None, :] ** (-x.reshape(-1, 1))
    out = np.exp(np.sum(np.log1p(t) - np.log1p(-t), axis=1))
    return out.reshape(x.shape)


class SmoothSum(NamedTuple):
    partial: float
    tail_bound: float
    product: float


def smooth_two_omega_sum(x: float, d: int, N: int = 10**6) -> SmoothSum:
    """Direct sum over p_d-smooth n <= N of 2^omega(n) n^(-x) against the Euler product.

    The tail bound covers every n > N, smooth or not, through 2^omega <= d and
    sum_{n<=t} d(n) <= t (log t + 1).
    """
    from .arithmetic import arithmetic_tables, primes_up_to

    p = _prime_array(d)
    t = arithmetic_tables(N)
    n = np.arange(N + 1)
    # largest prime factor <= p_d  <=>  n has no prime factor above p_d
    smooth = np.ones(N + 1, dtype=bool)
    smooth[0] = False
    for q in primes_up_to(N):
        if q > p[-1]:
            smooth[q::q] = False
    vals = 2.0 ** t.omega_small[smooth] * n[smooth].astype(float) ** (-x)
    tail = x * N ** (1 - x) * ((math.log(N) + 1) / (x - 1) + 1 / (x - 1) ** 2)
    return SmoothSum(float(np.sum(vals)), tail, float(two_omega_series(x, d)))


def carleson2_embedding(eps: float, d: int | None = None) -> Estimate:
    """int_0^1 (sum 2^omega(n) n^(-1-eps-sigma))^2 d sigma over p_d-smooth n."""
    _check_eps(eps)

    def integrand(sigma):
        return two_omega_series(1 + eps + sigma, d) ** 2

    return graded_integral(integrand, 0.0, 1.0, eps)


def carleson2_ratio(eps: float, d: int | None = None) -> Carleson2:
    """Embedding integral, l2 mass and their ratio; d=None takes all primes."""
    emb = carleson2_embedding(eps, d)
    return Carleson2(eps, d, emb.value, emb.error, carleson2_l2mass(eps, d))


def loglog_slope(x1: float, y1: float, x2: float, y2: float) -> float:
    return math.log(y2 / y1) / math.log(x2 / x1)


def boundary_layer_integral(eps: float) -> Estimate:
    """int_0^1 (sigma + eps)^(-4) d sigma by the graded rule."""
    return graded_integral(lambda s: (s + eps) ** -4.0, 0.0, 1.0, eps)


def boundary_layer_exact(eps: float) -> float:
    return (eps**-3 - (1 + eps) ** -3) / 3
