"""Dirichlet polynomials, polydisc polynomials and the Bohr lift between them.

The space of Dirichlet series with norm ||B f||_{A^p(D^inf)} is handled
through finite truncations: a finite support in n, equivalently a finite set
of variables z_j = p_j^(-s).  Coefficient-formula norms work in any dimension;
the quadrature oracle is limited to three variables.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .arithmetic import (
    arithmetic_tables,
    factorize,
    index_to_integer,
    primes_first,
)
from .quadrature import DiscQuadrature, Estimate, is_even_integer
from .disc import norm_estimate
from .special import zeta_real

MAX_QUAD_DIM = 3

_EPS = np.finfo(float).eps


def _canonical(kappa) -> tuple:
    k = list(int(x) for x in kappa)
    if any(x < 0 for x in k):
        raise ValueError("multi-index entries must be non-negative")
    while k and k[-1] == 0:
        k.pop()
    return tuple(k)


@dataclass(frozen=True, eq=False)
class DirichletPolynomial:
    """Finite Dirichlet series sum_n a_n n^(-s)."""

    coeffs: Mapping[int, complex]

    def __post_init__(self):
        clean = {}
        for n, a in dict(self.coeffs).items():
            n = int(n)
            if n < 1:
                raise ValueError("indices must be positive integers")
            a = complex(a)
            if not (math.isfinite(a.real) and math.isfinite(a.imag)):
                raise ValueError("coefficients must be finite")
            if a != 0:
                clean[n] = clean.get(n, 0) + a
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def from_arrays(cls, n, a) -> "DirichletPolynomial":
        return cls(dict(zip((int(x) for x in n), a)))

    @property
    def support(self) -> np.ndarray:
        return np.fromiter(self.coeffs.keys(), dtype=np.int64, count=len(self.coeffs))

    @property
    def values(self) -> np.ndarray:
        return np.fromiter(self.coeffs.values(), dtype=complex, count=len(self.coeffs))

    @property
    def max_index(self) -> int:
        return max(self.coeffs, default=1)

    def __getitem__(self, n) -> complex:
        return self.coeffs.get(int(n), 0j)

    def __call__(self, s):
        n = self.support.astype(float)
        s = np.asarray(s)
        out = np.sum(self.values * n ** (-s[..., None]), axis=-1)
        return complex(out) if out.ndim == 0 else out

    def __add__(self, other):
        merged = dict(self.coeffs)
        for n, a in other.coeffs.items():
            merged[n] = merged.get(n, 0) + a
        return DirichletPolynomial(merged)

    def __mul__(self, other):
        if np.isscalar(other):
            return DirichletPolynomial({n: a * other for n, a in self.coeffs.items()})
        out: dict[int, complex] = {}
        for m, a in self.coeffs.items():
            for n, b in other.coeffs.items():
                out[m * n] = out.get(m * n, 0) + a * b
        return DirichletPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, DirichletPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "re", "im"])
        for n, a in self.coeffs.items():
            w.writerow([n, repr(a.real), repr(a.imag)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "DirichletPolynomial":
        rows = list(csv.reader(io.StringIO(text)))
        if not rows or rows[0] != ["n", "re", "im"]:
            raise ValueError("expected header n,re,im")
        return cls({int(n): complex(float(re), float(im)) for n, re, im in rows[1:]})


@dataclass(frozen=True, eq=False)
class PolydiscPolynomial:
    """Finite power series sum_kappa a_kappa z^kappa in finitely many variables."""

    coeffs: Mapping[tuple, complex]

    def __post_init__(self):
        clean: dict[tuple, complex] = {}
        for k, a in dict(self.coeffs).items():
            k = _canonical(k)
            a = complex(a)
            if a != 0:
                clean[k] = clean.get(k, 0) + a
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @property
    def nvars(self) -> int:
        return max((len(k) for k in self.coeffs), default=0)

    def degrees(self) -> tuple:
        """Largest exponent of each variable."""
        d = [0] * self.nvars
        for k in self.coeffs:
            for j, e in enumerate(k):
                d[j] = max(d[j], e)
        return tuple(d)

    def __getitem__(self, kappa) -> complex:
        return self.coeffs.get(_canonical(kappa), 0j)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        total = 0j
        for k, a in self.coeffs.items():
            total += a * np.prod([z[j] ** e for j, e in enumerate(k)])
        return total

    def __add__(self, other):
        merged = dict(self.coeffs)
        for k, a in other.coeffs.items():
            merged[k] = merged.get(k, 0) + a
        return PolydiscPolynomial(merged)

    def __mul__(self, other):
        if np.isscalar(other):
            return PolydiscPolynomial({k: a * other for k, a in self.coeffs.items()})
        out: dict[tuple, complex] = {}
        for k1, a in self.coeffs.items():
            for k2, b in other.coeffs.items():
                n = max(len(k1), len(k2))
                k = tuple(
                    (k1[j] if j < len(k1) else 0) + (k2[j] if j < len(k2) else 0)
                    for j in range(n)
                )
                out[k] = out.get(k, 0) + a * b
        return PolydiscPolynomial(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, PolydiscPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None

    def dilate(self, r) -> "PolydiscPolynomial":
        """P_r F(z) = F(r_1 z_1, r_2 z_2, ...); a scalar r applies to every variable."""
        r = np.broadcast_to(np.asarray(r, dtype=float), (max(self.nvars, 1),))
        if np.any(r < 0) or np.any(r > 1):
            raise ValueError("dilation radii must lie in [0, 1]")
        return PolydiscPolynomial(
            {k: a * np.prod([r[j] ** e for j, e in enumerate(k)]) for k, a in self.coeffs.items()}
        )

    def to_dense(self, shape=None) -> np.ndarray:
        if shape is None:
            shape = tuple(d + 1 for d in self.degrees())
        arr = np.zeros(shape, dtype=complex)
        for k, a in self.coeffs.items():
            idx = tuple(k) + (0,) * (len(shape) - len(k))
            arr[idx] = a
        return arr


# --- Bohr lift --------------------------------------------------------------


def bohr_lift(f: DirichletPolynomial) -> PolydiscPolynomial:
    """n^(-s) -> z^kappa(n)."""
    return PolydiscPolynomial({factorize(n): a for n, a in f.coeffs.items()})


def bohr_unlift(F: PolydiscPolynomial) -> DirichletPolynomial:
    return DirichletPolynomial({index_to_integer(k): a for k, a in F.coeffs.items()})


def as_dirichlet(f) -> DirichletPolynomial:
    if isinstance(f, DirichletPolynomial):
        return f
    if isinstance(f, PolydiscPolynomial):
        return bohr_unlift(f)
    return DirichletPolynomial(f)


def translate(f: DirichletPolynomial, eps: float) -> DirichletPolynomial:
    """T_eps f(s) = f(s + eps): coefficients a_n n^(-eps)."""
    if not eps > 0:
        raise ValueError("eps must be positive")
    return DirichletPolynomial({n: a * float(n) ** (-eps) for n, a in f.coeffs.items()})


def translation_radii(eps: float, nvars: int) -> np.ndarray:
    """r_j = p_j^(-eps), the dilation matching T_eps under the lift."""
    return np.asarray(primes_first(max(nvars, 1)).primes, dtype=float)[:nvars] ** (-eps)


# --- norms ------------------------------------------------------------------


def norm_a2alpha(f, alpha: float) -> float:
    """(sum_n |a_n|^2 / d_alpha(n))^(1/2)."""
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    f = as_dirichlet(f)
    if not f.coeffs:
        return 0.0
    d = arithmetic_tables(max(f.max_index, 2)).d_alpha(alpha)
    n = f.support
    return float(np.sqrt(np.sum(np.abs(f.values) ** 2 / d[n])))


def weighted_coeff_norm(f, weights) -> float:
    """(sum_n |a_n|^2 w_n)^(1/2), with w_n listed in the order of ``f.support``."""
    f = as_dirichlet(f)
    if not f.coeffs:
        return 0.0
    return float(np.sqrt(np.sum(np.abs(f.values) ** 2 * np.asarray(weights, dtype=float))))


def _tensor_moment(C, p, rules, chunk=1 << 21):
    """sum over radial nodes of prod(weights) * angular mean of |F|^p.

    Returns (value, angular error estimate from the even-indexed sub-grid).
    """
    d = C.ndim
    Ms = tuple(q.n_angular for q in rules)
    for q, D in zip(rules, C.shape):
        if q.n_angular < D:
            raise ValueError("angular rule too coarse for the coefficient array")
    powers = [q.radii[:, None] ** np.arange(D)[None, :] for q, D in zip(rules, C.shape)]
    subgrid = all(M % 2 == 0 for M in Ms)
    total = 0.0
    total_half = 0.0
    # loop over radial nodes of all but the last variable, batching the last
    if d > 1:
        grids = np.meshgrid(*[np.arange(len(q.radii)) for q in rules[:-1]], indexing="ij")
        outer = np.stack(grids, -1).reshape(-1, d - 1)
    else:
        outer = np.zeros((1, 0), int)
    per_item = int(np.prod(Ms))
    step = max(1, chunk // (per_item * len(rules[-1].radii)))
    for start in range(0, len(outer), step):
        block = outer[start : start + step]
        scaled = np.broadcast_to(C, (len(block), len(rules[-1].radii)) + C.shape).copy()
        w = np.ones(len(block))
        for j in range(d - 1):
            shape = [1] * scaled.ndim
            shape[0], shape[2 + j] = len(block), C.shape[j]
            scaled *= powers[j][block[:, j]].reshape(shape)
            w = w * rules[j].weights[block[:, j]]
        shape = [1] * scaled.ndim
        shape[1], shape[-1] = len(rules[-1].radii), C.shape[-1]
        scaled *= powers[-1].reshape(shape)
        vals = np.fft.ifftn(scaled, s=Ms, axes=tuple(range(2, 2 + d))) * per_item
        mag = np.abs(vals) ** p
        means = mag.mean(axis=tuple(range(2, 2 + d)))
        wt = w[:, None] * rules[-1].weights[None, :]
        total += float(np.sum(wt * means))
        if subgrid:
            sub = mag[(slice(None), slice(None)) + (slice(None, None, 2),) * d]
            total_half += float(np.sum(wt * sub.mean(axis=tuple(range(2, 2 + d)))))
    ang_err = abs(total - total_half) if subgrid else math.nan
    return total, ang_err


def polydisc_norm_estimate(F, p: float, alpha: float = 2.0, quad: DiscQuadrature | None = None) -> Estimate:
    """(int_{D^d} |F|^p dm_alpha^{(x)d})^(1/p) by tensor-product quadrature, d <= 3."""
    if isinstance(F, DirichletPolynomial):
        F = bohr_lift(F)
    if not p > 0:
        raise ValueError("p must be positive")
    if alpha < 1:
        raise ValueError("alpha must be >= 1")
    d = F.nvars
    if d > MAX_QUAD_DIM:
        raise ValueError(f"quadrature oracle supports at most {MAX_QUAD_DIM} variables, got {d}")
    if not F.coeffs:
        return Estimate(0.0, 0.0)
    if d == 0:
        c = abs(F[()])
        return Estimate(c, 0.0)
    C = F.to_dense()
    even = is_even_integer(p)
    if d == 1 and quad is None:
        return norm_estimate(C, p, alpha)
    if quad is not None:
        if quad.alpha != alpha:
            raise ValueError("quadrature weight does not match alpha")
        rules = [quad] * d
        val, ang = _tensor_moment(C, p, rules)
        err = 64 * _EPS * val if even else ang
    elif even:
        m = int(p) // 2
        rules = [
            DiscQuadrature(alpha, max(1, math.ceil((m * D + 1) / 2)), m * D + 1 + (m * D + 1) % 2)
            for D in (s - 1 for s in C.shape)
        ]
        val, _ = _tensor_moment(C, p, rules)
        err = 64 * _EPS * val
    else:
        def rules_for(scale):
            return [
                DiscQuadrature(alpha, max(2, scale * (D + 4) // 4), 8 * (D + 2))
                for D in (s - 1 for s in C.shape)
            ]
        size = 16 if d < 3 else 8
        val, ang = _tensor_moment(C, p, rules_for(size))
        coarse, _ = _tensor_moment(C, p, rules_for(size // 2))
        err = ang + abs(val - coarse)
    if val <= 0:
        return Estimate(0.0, err ** (1 / p))
    norm = val ** (1 / p)
    return Estimate(norm, norm / p * err / val)


def polydisc_norm_quad(F, p: float, alpha: float = 2.0, quad: DiscQuadrature | None = None) -> float:
    return polydisc_norm_estimate(F, p, alpha, quad).value


def _check_dim(f: DirichletPolynomial) -> PolydiscPolynomial:
    F = bohr_lift(f)
    if F.nvars > MAX_QUAD_DIM:
        raise ValueError(
            f"support must use only the first {MAX_QUAD_DIM} primes; uses {F.nvars}"
        )
    return F


# --- inequality gaps --------------------------------------------------------


def polydisc_weissler_gap(f, p: float, q: float, r) -> Estimate:
    """||P_r F||_{A^q(D^d)} - ||F||_{A^p(D^d)} for the lift F of f."""
    if not 0 < p <= q:
        raise ValueError("need 0 < p <= q")
    F = _check_dim(as_dirichlet(f))
    a = polydisc_norm_estimate(F.dilate(r), q)
    b = polydisc_norm_estimate(F, p)
    return Estimate(a.value - b.value, a.error + b.error)


def weisslerhalf_gap(f, p: float, q: float, eps: float) -> Estimate:
    """||T_eps f||_{A^q} - ||f||_{A^p} for Dirichlet polynomials on the first three primes."""
    if not 0 < p <= q:
        raise ValueError("need 0 < p <= q")
    f = as_dirichlet(f)
    _check_dim(f)
    a = polydisc_norm_estimate(bohr_lift(translate(f, eps)), q)
    b = polydisc_norm_estimate(bohr_lift(f), p)
    return Estimate(a.value - b.value, a.error + b.error)


def weisslerhalf_threshold(p: float, q: float) -> float:
    """The eps with 2^(-eps) = sqrt(p/q)."""
    return math.log(q / p) / (2 * math.log(2))


def helson_gap(f) -> Estimate:
    """||f||_{A^1} - (sum |a_n|^2 / d_4(n))^(1/2); non-negative."""
    f = as_dirichlet(f)
    F = _check_dim(f)
    lhs = polydisc_norm_estimate(F, 1)
    rhs = norm_a2alpha(f, 4)
    return Estimate(lhs.value - rhs, lhs.error + 64 * _EPS * rhs)


def is_hlin_exponent(p: float) -> bool:
    """p = 2/(1 + n/2) for a non-negative integer n."""
    n = 2 * (2 / p - 1)
    return n > -1e-12 and abs(n - round(n)) < 1e-12


class AHLGap(dict):
    """Gaps keyed by 'direct', 'dilation_path' and, when available, 'full'."""


def ahl_gap(f, p: float) -> AHLGap:
    """Quadrature norm minus each of the coefficient lower bounds for 0 < p <= 2."""
    if not 0 < p <= 2:
        raise ValueError("need 0 < p <= 2")
    f = as_dirichlet(f)
    F = _check_dim(f)
    nrm = polydisc_norm_estimate(F, p)
    n = f.support
    t = arithmetic_tables(max(f.max_index, 2))
    d_inv = 1.0 / t.d_alpha(4 / p)[n]
    direct = weighted_coeff_norm(f, np.abs(t.moebius[n]) * d_inv)
    path = weighted_coeff_norm(f, (p / 2) ** t.omega_big[n].astype(float) / t.d_alpha(2)[n])
    out = AHLGap(
        direct=Estimate(nrm.value - direct, nrm.error),
        dilation_path=Estimate(nrm.value - path, nrm.error),
    )
    if is_hlin_exponent(p):
        out["full"] = Estimate(nrm.value - weighted_coeff_norm(f, d_inv), nrm.error)
    return out


def dirichlet_pointwise_gap(f, p: float, sigma: float) -> Estimate:
    """zeta(2 sigma)^(2/p) ||f||_{A^p} - |f(sigma)|; non-negative."""
    if not sigma > 0.51:
        raise ValueError("sigma must exceed 0.51 (the bound degenerates at 1/2)")
    f = as_dirichlet(f)
    F = _check_dim(f)
    nrm = polydisc_norm_estimate(F, p)
    scale = zeta_real(2 * sigma) ** (2 / p)
    return Estimate(scale * nrm.value - abs(f(sigma)), scale * nrm.error)


def smooth_support(nvars: int, max_exponent: int) -> list[int]:
    """All n = prod p_j^k_j with j < nvars and k_j <= max_exponent."""
    primes = primes_first(max(nvars, 1)).primes[:nvars]
    out = [1]
    for q in primes:
        out = [n * q**k for n in out for k in range(max_exponent + 1)]
    return sorted(out)


def reproducing_kernel(sigma: float, nvars: int, max_exponent: int) -> DirichletPolynomial:
    """Truncation of sum_n d(n) n^(-sigma) n^(-s), the A^2 kernel at sigma."""
    support = smooth_support(nvars, max_exponent)
    t = arithmetic_tables(max(support))
    d = t.d_alpha(2)
    return DirichletPolynomial({n: float(d[n]) * n ** (-sigma) for n in support})


def random_dirichlet(rng: np.random.Generator, nvars: int = 2, max_exponent: int = 2, density: float = 0.6) -> DirichletPolynomial:
    """Random coefficients on a random subset of the p_nvars-smooth box."""
    support = smooth_support(nvars, max_exponent)
    keep = [n for n in support if rng.random() < density] or [1]
    a = rng.uniform(-1, 1, len(keep)) + 1j * rng.uniform(-1, 1, len(keep))
    return DirichletPolynomial(dict(zip(keep, a)))


def random_dirichlet_suite(count: int, seed: int, nvars: int = 2, max_exponent: int = 2) -> list[DirichletPolynomial]:
    rng = np.random.default_rng(seed)
    return [random_dirichlet(rng, nvars, max_exponent) for _ in range(count)]
