"""Truncated Hankel forms: multiplicative (on n = 1..N) and one-variable (on j = 0..D).

Matrices are written on orthonormal bases: e_n = z^kappa(n) sqrt(d(n)) for the
Bergman space of the infinite polydisc, plain monomials for Hardy spaces, and
w^j sqrt(j + 1) for the Bergman space of the disc.  Also here: the extension
E, diagonal restriction D and projection P between one and two variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np
from scipy.special import roots_genlaguerre

from .arithmetic import (
    arithmetic_tables,
    average_order_constant,
    divisor_fn,
    primes_first,
)
from .disc import DiscPolynomial, norm_quad
from .polydisc import DirichletPolynomial
from .quadrature import Estimate, graded_integral
from .special import zeta_real

SCHEMES = ("hardy", "bergman", "two-var-hardy")
KINDS = ("multiplicative", "disc")

# divisor values above this index come from factorization, not sieved tables
_TABLE_LIMIT = 2_000_000


def divisor_values(alpha, n) -> np.ndarray:
    """d_alpha at each entry of the integer array n."""
    n = np.asarray(n, dtype=np.int64)
    if len(n) == 0:
        return np.zeros(0)
    top = int(n.max())
    if top <= _TABLE_LIMIT:
        return np.asarray(arithmetic_tables(max(top, 2)).d_alpha(alpha)[n], dtype=float)
    return np.array([float(divisor_fn(alpha, int(k))) for k in n])


@dataclass(frozen=True, eq=False)
class HankelSymbol:
    """Coefficients rho of a symbol.

    ``kind == "multiplicative"``: rho[n] for 1 <= n <= n_sym (rho[0] unused).
    ``kind == "disc"``: rho[j] for 0 <= j <= n_sym.
    ``complete`` means the coefficients beyond n_sym are known to vanish; if
    it is False, builders refuse matrices that would need them.
    """

    rho: np.ndarray
    kind: str = "multiplicative"
    complete: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        r = np.atleast_1d(np.asarray(self.rho, dtype=complex)).copy()
        if r.ndim != 1:
            raise ValueError("rho must be one-dimensional")
        if self.kind == "multiplicative":
            if len(r) < 2:
                r = np.concatenate([r, np.zeros(2 - len(r))])
            r[0] = 0
        r.setflags(write=False)
        object.__setattr__(self, "rho", r)

    @classmethod
    def from_dict(cls, coeffs: dict, kind="multiplicative", n_sym=None, complete=True):
        top = max(coeffs, default=0 if kind == "disc" else 1)
        size = (n_sym if n_sym is not None else top) + 1
        if top >= size:
            raise ValueError("n_sym smaller than the largest index")
        r = np.zeros(size, dtype=complex)
        for k, v in coeffs.items():
            r[int(k)] = v
        return cls(r, kind, complete)

    @property
    def n_sym(self) -> int:
        return len(self.rho) - 1

    def __getitem__(self, n) -> complex:
        return self.rho[n] if 0 <= n < len(self.rho) else 0j

    def coefficients(self, index: np.ndarray) -> np.ndarray:
        """rho at an integer array of indices, checking the truncation policy."""
        index = np.asarray(index, dtype=np.int64)
        top = int(index.max()) if index.size else 0
        if top > self.n_sym:
            if not self.complete:
                raise ValueError(
                    f"symbol known only up to {self.n_sym}; the matrix needs index {top}"
                )
            padded = np.zeros(top + 1, dtype=complex)
            padded[: len(self.rho)] = self.rho
            return padded[index]
        return self.rho[index]

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.rho)


@dataclass(frozen=True, eq=False)
class HankelMatrix:
    entries: np.ndarray
    scheme: str
    labels: tuple = field(default=())

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"scheme must be one of {SCHEMES}")
        e = np.asarray(self.entries, dtype=complex).copy()
        if e.ndim != 2:
            raise ValueError("entries must be a matrix")
        e.setflags(write=False)
        object.__setattr__(self, "entries", e)
        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(e.shape[0])))

    @property
    def n_basis(self) -> int:
        return self.entries.shape[0]

    def frobenius_mass(self) -> float:
        return float(np.sum(np.abs(self.entries) ** 2))

    def to_text(self) -> str:
        """Header line with scheme and size, then one row per line as re im pairs."""
        rows, cols = self.entries.shape
        lines = [f"scheme={self.scheme} n_basis={rows} n_cols={cols}"]
        for row in self.entries:
            lines.append(" ".join(f"{repr(float(z.real))} {repr(float(z.imag))}" for z in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "HankelMatrix":
        lines = text.strip("\n").split("\n")
        header = dict(item.split("=", 1) for item in lines[0].split())
        rows, cols = int(header["n_basis"]), int(header.get("n_cols", header["n_basis"]))
        if len(lines) - 1 != rows:
            raise ValueError("row count does not match header")
        data = np.array([[float(x) for x in line.split()] for line in lines[1:]])
        if data.shape != (rows, 2 * cols):
            raise ValueError("column count does not match header")
        return cls(data[:, 0::2] + 1j * data[:, 1::2], header["scheme"])


class SingularSpectrum(NamedTuple):
    values: np.ndarray

    @property
    def norm(self) -> float:
        return float(self.values[0]) if len(self.values) else 0.0

    def mass(self) -> float:
        return float(np.sum(self.values**2))


def singular_values(M) -> SingularSpectrum:
    """Descending singular values (LAPACK divide and conquer SVD)."""
    e = M.entries if isinstance(M, HankelMatrix) else np.asarray(M, dtype=complex)
    k = min(e.shape)
    if k == 0:
        return SingularSpectrum(np.zeros(0))
    # identically zero rows and columns only contribute zero singular values
    core = e[np.any(e != 0, axis=1)][:, np.any(e != 0, axis=0)]
    out = np.zeros(k)
    if core.size:
        s = np.linalg.svd(core, compute_uv=False)
        out[: len(s)] = s
    return SingularSpectrum(np.sort(out)[::-1])


def _labels(n_basis) -> np.ndarray:
    if isinstance(n_basis, (int, np.integer)):
        return np.arange(1, int(n_basis) + 1, dtype=np.int64)
    lab = np.asarray(list(n_basis), dtype=np.int64)
    if lab.size and lab.min() < 1:
        raise ValueError("multiplicative basis labels must be positive")
    return lab


def build_bergman_hankel(phi: HankelSymbol, n_basis) -> HankelMatrix:
    """Entries rho_{mn} sqrt(d(m) d(n)) / d(mn) (or the disc analogue with j + k)."""
    if phi.kind == "disc":
        j = np.arange(int(n_basis))
        s = j[:, None] + j[None, :]
        rho = phi.coefficients(s)
        w = np.sqrt(np.outer(j + 1, j + 1).astype(float)) / (s + 1)
        return HankelMatrix(rho * w, "bergman", tuple(j.tolist()))
    lab = _labels(n_basis)
    prod = np.outer(lab, lab)
    rho = phi.coefficients(prod)
    d_lab = divisor_values(2, lab)
    flat = prod.ravel()
    d_prod = divisor_values(2, flat).reshape(prod.shape)
    entries = rho * np.sqrt(np.outer(d_lab, d_lab)) / d_prod
    return HankelMatrix(entries, "bergman", tuple(lab.tolist()))


def build_hardy_hankel(phi: HankelSymbol, n_basis) -> HankelMatrix:
    """Entries rho_{mn} (or rho_{j+k} for a disc symbol) on the monomial basis."""
    if phi.kind == "disc":
        j = np.arange(int(n_basis))
        return HankelMatrix(phi.coefficients(j[:, None] + j[None, :]), "hardy", tuple(j.tolist()))
    lab = _labels(n_basis)
    return HankelMatrix(phi.coefficients(np.outer(lab, lab)), "hardy", tuple(lab.tolist()))


def two_variable_labels(D: int) -> list[tuple[int, int]]:
    """Monomials z1^j z2^k with j + k <= D, ordered by total degree."""
    return [(j, l - j) for l in range(D + 1) for j in range(l, -1, -1)]


def build_two_variable_hardy(phi: HankelSymbol, D: int) -> HankelMatrix:
    """Matrix of the form with symbol E(phi) on H^2 of the bidisc, monomials of degree <= D.

    The coefficient of E(phi) on z^a is rho_l / (l + 1), l = |a|, so each entry
    depends only on the total degree of the product.
    """
    if phi.kind != "disc":
        raise ValueError("two-variable builder needs a one-variable symbol")
    labels = two_variable_labels(D)
    deg = np.array([j + k for j, k in labels])
    s = deg[:, None] + deg[None, :]
    entries = phi.coefficients(s) / (s + 1)
    return HankelMatrix(entries, "two-var-hardy", tuple(labels))


# --- Hilbert-Schmidt norms --------------------------------------------------


def hs_norm_bergman(phi: HankelSymbol) -> float:
    """(sum_l |rho_l|^2 d_4(l) / d(l)^2)^(1/2)."""
    if phi.kind == "disc":
        # one variable: d_4 / d^2 becomes c_4 / c_2^2 on the degree
        l = np.arange(len(phi.rho))
        w = (l + 1) * (l + 2) * (l + 3) / 6 / (l + 1) ** 2
        return float(np.sqrt(np.sum(np.abs(phi.rho) ** 2 * w)))
    n = phi.support()
    if len(n) == 0:
        return 0.0
    w = divisor_values(4, n) / divisor_values(2, n) ** 2
    return float(np.sqrt(np.sum(np.abs(phi.rho[n]) ** 2 * w)))


def hs_norm_hardy(phi: HankelSymbol) -> float:
    """(sum_n |rho_n|^2 d(n))^(1/2)."""
    if phi.kind == "disc":
        l = np.arange(len(phi.rho))
        return float(np.sqrt(np.sum(np.abs(phi.rho) ** 2 * (l + 1))))
    n = phi.support()
    if len(n) == 0:
        return 0.0
    return float(np.sqrt(np.sum(np.abs(phi.rho[n]) ** 2 * divisor_values(2, n))))


def separated_products(count: int) -> list[int]:
    """n_1 = 2, n_2 = 3*5, n_3 = 7*11*13, ...: n_j is a product of j fresh primes."""
    primes = primes_first(count * (count + 1) // 2).primes
    out, pos = [], 0
    for j in range(1, count + 1):
        out.append(math.prod(primes[pos : pos + j]))
        pos += j
    return out


def sparse_hs_norms(coeffs: dict) -> tuple[float, float]:
    """(bergman, hardy) Hilbert-Schmidt norms for a sparse symbol {n: rho_n}."""
    b = h = 0.0
    for n, r in coeffs.items():
        d2 = divisor_fn(2, n)
        b += abs(r) ** 2 * divisor_fn(4, n) / d2**2
        h += abs(r) ** 2 * d2
    return math.sqrt(b), math.sqrt(h)


def bergman_frobenius_exact(rho: dict, L: int) -> tuple[Fraction, Fraction]:
    """Exact (matrix mass over pairs mn <= L, coefficient formula) for integer rho.

    Squared entries rho_{mn}^2 d(m) d(n) / d(mn)^2 are rational, so both sides
    can be compared without rounding.
    """
    t = arithmetic_tables(max(L, 2))
    d = t.d_alpha(2)
    d4 = t.d_alpha(4)
    lhs = Fraction(0)
    for m in range(1, L + 1):
        for n in range(1, L // m + 1):
            r = rho.get(m * n, 0)
            if r:
                lhs += Fraction(int(r) ** 2 * int(d[m]) * int(d[n]), int(d[m * n]) ** 2)
    rhs = sum(
        (Fraction(int(r) ** 2 * int(d4[l]), int(d[l]) ** 2) for l, r in rho.items() if l <= L),
        Fraction(0),
    )
    return lhs, rhs


# --- the Hilbert-type form ---------------------------------------------------


def hilbert_type_symbol(N: int) -> HankelSymbol:
    """rho_n = d(n) / (sqrt(n) (log n)^2) for 2 <= n <= N, rho_1 = 0."""
    if N < 2:
        raise ValueError("N must be >= 2")
    n = np.arange(N + 1, dtype=float)
    d = arithmetic_tables(N).d_alpha(2).astype(float)
    rho = np.zeros(N + 1)
    rho[2:] = d[2:] / (np.sqrt(n[2:]) * np.log(n[2:]) ** 2)
    return HankelSymbol(rho, "multiplicative", complete=False)


class PartialSum(NamedTuple):
    N: int
    value: float
    value_half: float

    @property
    def growth(self) -> float:
        """Increase from N/2 to N, relative to the value at N."""
        return (self.value - self.value_half) / self.value if self.value else 0.0


def hilbert_type_hs_partial(N: int) -> PartialSum:
    """Partial sums of sum_l rho_l^2 d_4(l) / d(l)^2 at N and N/2."""
    phi = hilbert_type_symbol(N)
    n = np.arange(2, N + 1)
    t = arithmetic_tables(N)
    terms = np.abs(phi.rho[n]) ** 2 * t.d_alpha(4)[n] / t.d_alpha(2)[n].astype(float) ** 2
    cums = np.cumsum(terms)
    return PartialSum(N, float(cums[-1]), float(cums[N // 2 - 2]) if N >= 4 else 0.0)


def _check_no_constant(f: DirichletPolynomial, name: str):
    if f[1] != 0:
        raise ValueError(f"{name} must have zero constant term")


def hilbert_form_pairing(f: DirichletPolynomial, g: DirichletPolynomial) -> complex:
    """sum_{m,n} a_m b_n / (sqrt(mn) (log mn)^2), the coefficient side of H(fg)."""
    _check_no_constant(f, "f")
    _check_no_constant(g, "g")
    total = 0j
    for m, a in f.coeffs.items():
        for n, b in g.coeffs.items():
            total += a * b / (math.sqrt(m * n) * math.log(m * n) ** 2)
    return total


def hilbert_form_eval(f: DirichletPolynomial, g: DirichletPolynomial, order: int = 64) -> Estimate:
    """int_{1/2}^inf f(s) g(s) (s - 1/2) ds by generalized Gauss-Laguerre in u = s - 1/2.

    The factor u exp(-u log 4) is the Laguerre weight; log 4 is the slowest
    decay rate available when both constant terms vanish.
    """
    _check_no_constant(f, "f")
    _check_no_constant(g, "g")
    if not f.coeffs or not g.coeffs:
        return Estimate(0.0, 0.0)
    lam = math.log(4)

    def rule(n):
        x, w = roots_genlaguerre(n, 1)
        u = x / lam
        vals = f(0.5 + u) * g(0.5 + u) * np.exp(lam * u)
        return complex(np.sum(w * vals) / lam**2)

    fine, coarse = rule(order), rule(order // 2)
    return Estimate(fine, abs(fine - coarse))


def kernel_value(eps: float, u) -> np.ndarray:
    """k_eps(1/2 + u) = (zeta(1 + u + eps/2)^2 - 1) / sqrt(zeta(1 + eps)^2 - 1)."""
    norm = math.sqrt(zeta_real(1 + eps) ** 2 - 1)
    return (zeta_real(1 + np.asarray(u) + eps / 2) ** 2 - 1) / norm


def noncompactness_witness(eps: float) -> Estimate:
    """H(k_eps^2) for the normalized reproducing kernel k_eps of the space without constants."""
    if not 0 < eps <= 0.5:
        raise ValueError("need 0 < eps <= 1/2")
    upper = 80.0

    def integrand(u):
        return kernel_value(eps, u) ** 2 * u

    body = graded_integral(integrand, 0.0, upper, eps / 2)
    # beyond u = 80 the integrand is below 4^(-80) * u
    tail = 16 * 4.0 ** (-upper) * (upper + 1)
    return Estimate(body.value, body.error + tail)


def kernel_norm_check(eps: float, N: int = 10**6) -> Estimate:
    """||k_eps||^2 from the coefficients d(n) n^(-(1+eps)/2), n <= N, plus a tail estimate.

    The tail sum_{n>N} d(n) n^(-1-eps) is replaced by its mean-value integral
    N^(-eps) (log N / eps + 1/eps^2 + 2 gamma / eps); the returned error is the
    size of the last block, a generous proxy for the remainder.
    """
    t = arithmetic_tables(N)
    n = np.arange(2, N + 1, dtype=float)
    terms = t.d_alpha(2)[2:] * n ** (-1 - eps)
    partial = float(np.sum(terms))
    L = math.log(N)
    tail = N ** (-eps) * (L / eps + 1 / eps**2 + 2 * 0.5772156649015329 / eps)
    norm2 = zeta_real(1 + eps) ** 2 - 1
    block = float(np.sum(terms[N // 2 :]))
    return Estimate((partial + tail) / norm2, N ** (-0.5 - eps / 2) * block / norm2 + 1e-12)


# --- E, D and P -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BiPolynomial:
    """Two-variable polynomial with coefficient a[j, k] on z1^j z2^k."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs)
        if c.dtype != object:
            c = c.astype(complex)
        if c.ndim != 2:
            raise ValueError("coefficients must form a matrix")
        n = max(c.shape)
        if c.shape != (n, n):
            sq = np.zeros((n, n), dtype=c.dtype)
            sq[: c.shape[0], : c.shape[1]] = c
            c = sq
        object.__setattr__(self, "coeffs", c)

    def __eq__(self, other):
        if not isinstance(other, BiPolynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        n = max(a.shape[0], b.shape[0])
        pa = np.zeros((n, n), dtype=object)
        pb = np.zeros((n, n), dtype=object)
        pa[: a.shape[0], : a.shape[0]] = a
        pb[: b.shape[0], : b.shape[0]] = b
        return bool(np.all(pa == pb))

    __hash__ = None

    def __mul__(self, other):
        a, b = self.coeffs, other.coeffs
        n = a.shape[0] + b.shape[0] - 1
        out = np.zeros((n, n), dtype=np.result_type(a.dtype, b.dtype))
        for (j, k), x in np.ndenumerate(a):
            if x != 0:
                out[j : j + b.shape[0], k : k + b.shape[1]] += x * b
        return BiPolynomial(out)

    def __call__(self, z1, z2):
        return np.polynomial.polynomial.polyval2d(z1, z2, self.coeffs)


def _coeffs(g):
    if isinstance(g, DiscPolynomial):
        return g.coeffs
    c = np.asarray(g)
    return c if c.dtype == object else c.astype(complex)


def extend_E(g) -> BiPolynomial:
    """Coefficient b_l / (l + 1) on every z1^j z2^k with j + k = l."""
    b = _coeffs(g)
    n = len(b)
    out = np.zeros((n, n), dtype=b.dtype)
    for l in range(n):
        for j in range(l + 1):
            out[j, l - j] = b[l] / (l + 1)
    return BiPolynomial(out)


def diagonal_D(F: BiPolynomial) -> np.ndarray:
    """Coefficients of F(w, w): sums along anti-diagonals."""
    a = F.coeffs
    n = a.shape[0]
    out = np.zeros(2 * n - 1, dtype=a.dtype)
    for (j, k), x in np.ndenumerate(a):
        out[j + k] += x
    return out


def project_P(F: BiPolynomial) -> BiPolynomial:
    """P = E D: averages the coefficients over each total degree."""
    return extend_E(diagonal_D(F))


def inner_h2_bidisc(F: BiPolynomial, G: BiPolynomial):
    a, b = F.coeffs, G.coeffs
    n = min(a.shape[0], b.shape[0])
    return np.sum(a[:n, :n] * np.conj(b[:n, :n]))


def inner_a2_disc(f, g):
    a, b = _coeffs(f), _coeffs(g)
    n = min(len(a), len(b))
    return sum(a[l] * np.conj(b[l]) / (l + 1) for l in range(n))


def norm_h2_bidisc(F: BiPolynomial) -> float:
    return float(np.sqrt(np.sum(np.abs(F.coeffs.astype(complex)) ** 2)))


# --- spectral preservation -------------------------------------------------


class PreservationResult(NamedTuple):
    residual: float
    disc_values: np.ndarray
    bidisc_values: np.ndarray
    convergence: float


def sv_preservation_residual(phi: HankelSymbol, D: int, *, convergence: bool = True) -> PreservationResult:
    """Largest difference between the spectra of the disc Bergman form and the bidisc Hardy form of E(phi).

    The bidisc matrix has more rows; its extra singular values are compared
    with zero.  ``convergence`` also reports how much the disc spectrum moves
    between truncations D and 2D.
    """
    if phi.kind != "disc":
        raise ValueError("need a one-variable symbol")
    if phi.n_sym > 2 * D and np.any(phi.rho[2 * D + 1 :]):
        raise ValueError("symbol degree exceeds 2D")
    sym = HankelSymbol(phi.rho, "disc", complete=True)
    s1 = singular_values(build_bergman_hankel(sym, D + 1)).values
    s2 = singular_values(build_two_variable_hardy(sym, D)).values
    k = len(s1)
    residual = max(float(np.max(np.abs(s1 - s2[:k]), initial=0.0)), float(np.max(s2[k:], initial=0.0)))
    conv = 0.0
    if convergence:
        s3 = singular_values(build_bergman_hankel(sym, 2 * D + 1)).values
        conv = float(np.max(np.abs(s3[:k] - s1)))
    return PreservationResult(residual, s1, s2, conv)


def random_disc_symbol(rng: np.random.Generator, degree: int = 6) -> HankelSymbol:
    size = degree + 1
    rho = rng.uniform(-1, 1, size) + 1j * rng.uniform(-1, 1, size)
    return HankelSymbol(rho, "disc", complete=True)


# --- constants ----------------------------------------------------------------


@dataclass(frozen=True)
class WeakFactorizationConstants:
    norm_a1: float
    norm_a2: float
    hankel_norm: float
    c1_bound: float
    matrix: tuple

    def tensor_bound(self, d: int) -> float:
        """The d-fold tensor product gives C_d >= c1_bound^d."""
        return self.c1_bound**d


def weakfac_constants() -> WeakFactorizationConstants:
    """Constants for phi(w) = sqrt(2) w."""
    phi_poly = DiscPolynomial([0, math.sqrt(2)])
    a1 = norm_quad(phi_poly, 1, 2)
    a2 = norm_quad(phi_poly, 2, 2)
    M = build_bergman_hankel(HankelSymbol([0, math.sqrt(2)], "disc", complete=True), 2)
    h = singular_values(M).norm
    mat = tuple(tuple(float(x.real) for x in row) for row in M.entries)
    return WeakFactorizationConstants(a1, a2, h, a2**2 / (a1 * h), mat)


class DualityTail(NamedTuple):
    alpha: float
    N: int
    partial: float
    partial_double: float
    predicted_tail: float
    predicted_tail_double: float

    @property
    def relative_change(self) -> float:
        return (self.partial_double - self.partial) / self.partial_double

    @property
    def limit_estimate(self) -> float:
        return self.partial_double + self.predicted_tail_double


def _predicted_tail(C: float, alpha: float, N: int) -> float:
    # Abel summation with A(x) ~ C x (log x)^(2 alpha - 1)
    L = math.log(N)
    return C * (L ** (2 * alpha - 4) / (4 - 2 * alpha) + (2 * alpha - 1) * L ** (2 * alpha - 5) / (5 - 2 * alpha))


def duality_tail(alpha: float, N: int) -> DualityTail:
    """sum_{2<=n<=N} d(n) alpha^Omega(n) / (n (log n)^4) at N and 2N with predicted tails."""
    if not 1 < alpha < 2:
        raise ValueError("alpha must lie in (1, 2)")
    if N < 4:
        raise ValueError("N must be >= 4")
    t = arithmetic_tables(2 * N)
    n = np.arange(2, 2 * N + 1)
    terms = t.d_alpha(2)[n] * t.alpha_pow_omega(alpha)[n] / (n * np.log(n) ** 4)
    cums = np.cumsum(terms)
    C = average_order_constant(alpha).value / math.gamma(2 * alpha)
    return DualityTail(
        alpha,
        N,
        float(cums[N - 2]),
        float(cums[-1]),
        _predicted_tail(C, alpha, N),
        _predicted_tail(C, alpha, 2 * N),
    )
