"""Quadrature rules for the weighted measures dm_alpha on the unit disc.

In polar form dm_alpha = (alpha - 1)(1 - t)^(alpha - 2) dt dtheta/(2 pi) with
t = r^2, so the radial part is a Gauss-Jacobi rule in t and the angular part a
uniform rule.  Polynomials are sampled on the grid with one FFT per radius.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple

import numpy as np
from scipy.special import roots_jacobi, roots_legendre


class QuadratureOrderError(ValueError):
    """A fixed rule cannot integrate the requested polynomial exactly."""


class Estimate(NamedTuple):
    value: float
    error: float


@dataclass(frozen=True, eq=False)
class DiscQuadrature:
    """Product rule for dm_alpha; ``alpha == 1`` gives the circle rule.

    ``origin_power`` b folds an extra t^b into the radial weight, which lets
    the caller remove a zero of order k at the origin (b = k p / 2).
    ``breaks`` splits the t-interval into panels with ``n_radial`` nodes each;
    this helps when the integrand has kinks at known radii, at the price of
    losing polynomial exactness for non-integer weight exponents.
    """

    alpha: float
    n_radial: int
    n_angular: int
    origin_power: float = 0.0
    breaks: tuple = ()
    radii: np.ndarray = field(init=False, repr=False)
    weights: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")
        if self.n_angular < 1 or self.n_radial < 1:
            raise ValueError("node counts must be positive")
        if self.origin_power < 0:
            raise ValueError("origin_power must be non-negative")
        if self.alpha == 1:
            radii, weights = np.ones(1), np.ones(1)
        else:
            t, weights = _radial_rule(
                self.alpha - 2.0, float(self.origin_power), self.n_radial, self.breaks
            )
            weights = weights * (self.alpha - 1.0)
            radii = np.sqrt(t)
        object.__setattr__(self, "radii", radii)
        object.__setattr__(self, "weights", weights)

    @property
    def radial_exactness(self) -> int:
        """Highest degree in t = r^2 integrated exactly."""
        if self.alpha == 1:
            return math.inf
        if self.breaks and not (
            float(self.alpha).is_integer() and float(self.origin_power).is_integer()
        ):
            return 0
        return 2 * self.n_radial - 1

    @property
    def angular_exactness(self) -> int:
        return self.n_angular - 1

    def sample(self, coeffs) -> np.ndarray:
        """Values of sum_j c_j w^j on the (radius, angle) grid."""
        return sample_circles(coeffs, self.radii, self.n_angular)

    def angles(self) -> np.ndarray:
        return 2 * np.pi * np.arange(self.n_angular) / self.n_angular

    def points(self) -> np.ndarray:
        return self.radii[:, None] * np.exp(1j * self.angles())[None, :]

    def integrate(self, values) -> float:
        v = np.asarray(values)
        return float(np.dot(self.weights, v.mean(axis=1)))


def sample_circles(coeffs, radii, n_angular: int) -> np.ndarray:
    """Values of sum_j c_j w^j at w = r e^(2 pi i k / M), one row per radius."""
    c = np.asarray(coeffs, dtype=complex)
    M = n_angular
    radii = np.asarray(radii, dtype=float)
    scaled = radii[:, None] ** np.arange(len(c))[None, :] * c[None, :]
    if len(c) > M:
        # fold exponents modulo M; the uniform grid cannot tell them apart
        pad = (-len(c)) % M
        scaled = np.pad(scaled, ((0, 0), (0, pad)))
        scaled = scaled.reshape(len(radii), -1, M).sum(axis=1)
    return np.fft.ifft(scaled, n=M, axis=1) * M


def circle_means(coeffs, radii, p: float, n_angular: int, tol: float, max_angular: int):
    """Angular means of |f|^p on each circle, refined circle by circle.

    The rule with M/2 points is the even-indexed subset of the M-point rule, so
    every circle gets an error estimate for free; circles that miss ``tol`` are
    resampled with twice as many points until ``max_angular`` is reached.
    Returns (means, errors).
    """
    radii = np.asarray(radii, dtype=float)
    means = np.empty(len(radii))
    errors = np.empty(len(radii))
    todo = np.arange(len(radii))
    M = n_angular + (n_angular % 2)
    while len(todo):
        vals = np.abs(sample_circles(coeffs, radii[todo], M)) ** p
        full = vals.mean(axis=1)
        err = np.abs(full - vals[:, ::2].mean(axis=1))
        done = (err <= tol) | (M >= max_angular)
        means[todo[done]] = full[done]
        errors[todo[done]] = err[done]
        todo = todo[~done]
        M *= 2
    return means, errors


def _radial_rule(a: float, b: float, n: int, breaks) -> tuple[np.ndarray, np.ndarray]:
    """Nodes in t and weights for (1-t)^a t^b dt on [0, 1], panel-wise Gauss-Jacobi.

    The endpoint singularities go into the Jacobi weights of the first and last
    panel; on the other panels the weight is multiplied in explicitly.
    """
    edges = [0.0] + sorted(x for x in set(breaks) if 0.0 < x < 1.0) + [1.0]
    ts, ws = [], []
    last = len(edges) - 2
    for i, (u, v) in enumerate(zip(edges[:-1], edges[1:])):
        ai = a if i == last else 0.0
        bi = b if i == 0 else 0.0
        x, w = roots_jacobi(n, ai, bi)
        h = (v - u) / 2
        t = u + h * (1.0 + x)
        w = w * h ** (1.0 + ai + bi)
        if i != last:
            w = w * (1.0 - t) ** a
        if i != 0:
            w = w * t**b
        ts.append(t)
        ws.append(w)
    return np.concatenate(ts), np.concatenate(ws)


def exact_rule(
    alpha: float, max_degree: int, p: float, origin_power: float = 0.0
) -> DiscQuadrature:
    """Rule that is exact for |f|^p when p is an even integer and deg f <= max_degree."""
    m = p / 2
    n_radial = math.ceil(max_degree * p / 2) + 8
    n_angular = max(4 * max_degree + 8, math.ceil(m * max_degree) + 2)
    return DiscQuadrature(alpha, n_radial, n_angular, origin_power)


def is_even_integer(p: float) -> bool:
    return float(p).is_integer() and int(p) % 2 == 0


def check_exactness(quad: DiscQuadrature, degree: int, p: float) -> None:
    m = int(p) // 2
    need = m * degree
    if quad.radial_exactness < need or quad.angular_exactness < need:
        raise QuadratureOrderError(
            f"rule (n_radial={quad.n_radial}, n_angular={quad.n_angular}) is not exact "
            f"for |f|^{p} with deg f = {degree}"
        )


def gauss_legendre(a: float, b: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    half = (b - a) / 2
    return a + half * (x + 1), half * w


def graded_integral(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    scale: float,
    *,
    order: int = 24,
    ratio: float = 2.0,
) -> Estimate:
    """Integral of a smooth f on [a, b] with a boundary layer of width ``scale`` at a.

    Panels grow geometrically away from ``a``; the error estimate is the
    difference against the same panels at doubled order.
    """
    if not b > a:
        raise ValueError("need b > a")
    edges = [a]
    width = min(scale, b - a) / 4
    while edges[-1] + width < b:
        edges.append(edges[-1] + width)
        width *= ratio
    edges.append(b)

    def run(n):
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            x, w = gauss_legendre(lo, hi, n)
            total += float(np.dot(w, f(x)))
        return total

    coarse, fine = run(order), run(2 * order)
    return Estimate(fine, abs(fine - coarse))
