"""Primes, prime-exponent multi-indices and multiplicative arithmetic functions.

Integers n are identified with finitely supported multi-indices through
``n = prod(p_j ** k_j)``; tuples of exponents with no trailing zeros are the
canonical form.  Generalised divisor functions d_alpha are products of the
binomial-series coefficients c_alpha over those exponents.
"""

from __future__ import annotations

import bisect
import csv
import functools
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple

import numpy as np

from .special import gamma_real, zeta_real

MultiIndex = tuple  # tuple[int, ...], canonical form has no trailing zeros


@dataclass(frozen=True)
class PrimeTable:
    primes: tuple

    def __post_init__(self):
        if not self.primes or self.primes[0] != 2:
            raise ValueError("prime table must start at 2")
        if any(b <= a for a, b in zip(self.primes, self.primes[1:])):
            raise ValueError("prime table must be strictly increasing")

    def __len__(self):
        return len(self.primes)

    def __getitem__(self, j):
        return self.primes[j]

    def index(self, p: int) -> int:
        pos = bisect.bisect_left(self.primes, p)
        if pos == len(self.primes) or self.primes[pos] != p:
            raise ValueError(f"{p} not in table")
        return pos


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return np.flatnonzero(sieve).astype(np.int64)


def primes_first(count: int) -> PrimeTable:
    if count < 1:
        raise ValueError("count must be >= 1")
    # Rosser's bound p_n < n (log n + log log n) for n >= 6
    bound = 15 if count < 6 else int(count * (math.log(count) + math.log(math.log(count)))) + 1
    return PrimeTable(tuple(int(p) for p in primes_up_to(bound)[:count]))


@functools.lru_cache(maxsize=8)
def _prime_table_cached(count: int) -> PrimeTable:
    return primes_first(count)


def _table_covering(n: int) -> PrimeTable:
    """A cached table whose primes reach at least sqrt(n)."""
    count = 64
    while True:
        table = _prime_table_cached(count)
        if table.primes[-1] ** 2 >= n:
            return table
        count *= 4


def factorize(n: int, table: PrimeTable | None = None) -> MultiIndex:
    """Exponent multi-index of n by trial division against a prime table."""
    n = int(n)
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    table = table or _table_covering(n)
    exps: list[int] = []
    m = n
    for p in table.primes:
        if p * p > m:
            break
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        exps.append(k)
    else:
        if m > 1 and table.primes[-1] ** 2 < m:
            raise ValueError(f"prime table too short to factor {n}")
    if m > 1:
        # m is now prime
        pos = _prime_position(m)
        exps.extend([0] * (pos + 1 - len(exps)))
        exps[pos] += 1
    while exps and exps[-1] == 0:
        exps.pop()
    return tuple(exps)


def _prime_position(p: int) -> int:
    count = 64
    while True:
        table = _prime_table_cached(count)
        if table.primes[-1] >= p:
            pos = bisect.bisect_left(table.primes, p)
            if table.primes[pos] != p:
                raise ValueError(f"{p} is not prime")
            return pos
        count *= 4


def index_to_integer(kappa, max_value: int | None = None) -> int:
    """Inverse of :func:`factorize`."""
    kappa = tuple(int(k) for k in kappa)
    if any(k < 0 for k in kappa):
        raise ValueError("multi-index entries must be non-negative")
    while kappa and kappa[-1] == 0:
        kappa = kappa[:-1]
    if not kappa:
        return 1
    table = _prime_table_cached(max(64, 4 ** math.ceil(math.log(len(kappa), 4))))
    n = 1
    for p, k in zip(table.primes, kappa):
        n *= p**k
        if max_value is not None and n > max_value:
            raise OverflowError(f"product exceeds {max_value}")
    return n


def _is_exact(alpha) -> bool:
    return isinstance(alpha, Rational)


def binom_coeff(alpha, j: int):
    """c_alpha(j) = binom(j + alpha - 1, j), the coefficients of (1 - w)^(-alpha).

    Exact (int or Fraction) for rational ``alpha``, float otherwise.
    """
    if j < 0:
        raise ValueError("j must be non-negative")
    if _is_exact(alpha):
        a = Fraction(alpha)
        c = Fraction(1)
        for i in range(1, j + 1):
            c = c * (a + i - 1) / i
        return int(c) if c.denominator == 1 else c
    a = float(alpha)
    c = 1.0
    for i in range(1, j + 1):
        c *= (a + i - 1) / i
    return c


def binom_coeffs(alpha, n: int) -> np.ndarray:
    """Array of c_alpha(0..n-1) in floating point."""
    i = np.arange(1, n, dtype=float)
    return np.concatenate([[1.0], np.cumprod((float(alpha) + i - 1) / i)])


def divisor_fn(alpha, n: int):
    """d_alpha(n) = prod_j c_alpha(kappa_j(n))."""
    out = 1 if _is_exact(alpha) else 1.0
    for k in factorize(n):
        if k:
            out = out * binom_coeff(alpha, k)
    return out


def multi_binom(alpha, kappa):
    """c_alpha(kappa) = prod_j c_alpha(kappa_j)."""
    out = 1 if _is_exact(alpha) else 1.0
    for k in kappa:
        if k:
            out = out * binom_coeff(alpha, k)
    return out


class ArithmeticTables:
    """Sieved multiplicative functions on 1..limit (index 0 unused).

    Arrays ``omega_big`` (Omega), ``omega_small`` (omega), ``moebius`` and
    ``d`` (the ordinary divisor count) are built eagerly; ``d_alpha`` is
    computed on demand and cached.
    """

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("limit must be >= 1")
        self.limit = int(limit)
        n = self.limit
        self._small = primes_up_to(math.isqrt(n))
        self._exponents = []
        part = np.ones(n + 1, dtype=np.int64)
        omega_big = np.zeros(n + 1, dtype=np.int64)
        omega_small = np.zeros(n + 1, dtype=np.int64)
        moebius = np.ones(n + 1, dtype=np.int64)
        for p in self._small:
            p = int(p)
            e = np.ones(n // p, dtype=np.int64)
            q = p
            while q * p <= n:
                # multiples p*m with p^(k-1) | m, m = 1..n//p
                e[q - 1 :: q] += 1
                q *= p
            self._exponents.append(e)
            part[p::p] *= p**e
            omega_big[p::p] += e
            omega_small[p::p] += 1
            moebius[p::p] *= np.where(e == 1, -1, 0)
        idx = np.arange(n + 1, dtype=np.int64)
        idx[0] = 1
        # what remains after removing small primes is 1 or a single large prime
        self._large = (idx // part) > 1
        self._large[0] = False
        omega_big += self._large
        omega_small += self._large
        moebius[self._large] *= -1
        moebius[0] = 0
        omega_big[0] = 0
        omega_small[0] = 0
        self.omega_big = omega_big
        self.omega_small = omega_small
        self.moebius = moebius
        self._cache: dict = {}
        self.d = self.d_alpha(2)

    def _local(self, values_at_power) -> np.ndarray:
        """Multiplicative function with f(p^k) = values_at_power[k] for every p."""
        vals = np.asarray(values_at_power)
        out = np.ones(self.limit + 1, dtype=vals.dtype)
        for p, e in zip(self._small, self._exponents):
            out[int(p) :: int(p)] *= vals[e]
        out[self._large] *= vals[1]
        out[0] = 0
        return out

    def d_alpha(self, alpha) -> np.ndarray:
        key = alpha if not isinstance(alpha, float) or not alpha.is_integer() else int(alpha)
        if key in self._cache:
            return self._cache[key]
        kmax = max(1, int(math.log2(self.limit)) + 1)
        if isinstance(key, int):
            vals = np.array([binom_coeff(key, k) for k in range(kmax + 1)], dtype=np.int64)
        else:
            vals = binom_coeffs(alpha, kmax + 1)
        arr = self._local(vals)
        arr.setflags(write=False)
        self._cache[key] = arr
        return arr

    def alpha_pow_omega(self, alpha: float) -> np.ndarray:
        return float(alpha) ** self.omega_big.astype(float)

    def squarefree(self) -> np.ndarray:
        return self.moebius != 0

    def to_csv(self, fp=None, upto: int | None = None) -> str | None:
        """Write columns n, d_2, d_4, Omega, omega, mu."""
        upto = self.limit if upto is None else min(upto, self.limit)
        own = fp is None
        fp = io.StringIO() if own else fp
        w = csv.writer(fp, lineterminator="\n")
        w.writerow(["n", "d_2", "d_4", "Omega", "omega", "mu"])
        d2, d4 = self.d, self.d_alpha(4)
        for k in range(1, upto + 1):
            w.writerow([k, int(d2[k]), int(d4[k]), int(self.omega_big[k]), int(self.omega_small[k]), int(self.moebius[k])])
        return fp.getvalue() if own else None


@functools.lru_cache(maxsize=4)
def arithmetic_tables(limit: int) -> ArithmeticTables:
    return ArithmeticTables(limit)


def dirichlet_convolve(a: np.ndarray, b: np.ndarray, limit: int) -> np.ndarray:
    """(a * b)(l) = sum_{mn = l} a(m) b(n) for l <= limit; index 0 unused."""
    out = np.zeros(limit + 1, dtype=np.result_type(a, b))
    for m in range(1, limit + 1):
        if a[m] == 0:
            continue
        k = limit // m
        out[m :: m][:k] += a[m] * b[1 : k + 1]
    return out


def convolution_residual(alpha, beta, limit: int) -> float:
    """max_l |sum_{mn=l} d_alpha(m) d_beta(n) - d_{alpha+beta}(l)|, l <= limit."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    tab = arithmetic_tables(limit) if limit > 10**5 else ArithmeticTables(limit)
    lhs = dirichlet_convolve(tab.d_alpha(alpha), tab.d_alpha(beta), limit)
    rhs = tab.d_alpha(alpha + beta)
    return float(np.max(np.abs(lhs[1:] - rhs[1:])))


def _integer_param(x) -> int | None:
    if isinstance(x, (int, np.integer)) and x >= 1:
        return int(x)
    if isinstance(x, Fraction) and x.denominator == 1 and x >= 1:
        return int(x)
    return None


def _kronecker_convolve(a: list[int], b: list[int]) -> list[int]:
    """Exact product of non-negative integer sequences via one big-integer multiplication."""
    bits = max(max(a).bit_length() + max(b).bit_length() + len(a).bit_length() + 1, 8)
    width = (bits + 7) // 8

    def pack(seq):
        return int.from_bytes(b"".join(x.to_bytes(width, "little") for x in seq), "little")

    prod = (pack(a) * pack(b)).to_bytes(width * (len(a) + len(b)), "little")
    return [int.from_bytes(prod[i * width : (i + 1) * width], "little") for i in range(len(a))]


def sum_convolution_residual(alpha, beta, limit: int):
    """max_l |sum_{j+k=l} c_alpha(j) c_beta(k) - c_{alpha+beta}(l)|, l <= limit.

    Exact arithmetic when both parameters are rational; positive integer
    parameters go through Kronecker substitution, which keeps l ~ 10^4 fast.
    """
    ia, ib = _integer_param(alpha), _integer_param(beta)
    if ia is not None and ib is not None:
        ca = [math.comb(j + ia - 1, j) for j in range(limit + 1)]
        cb = [math.comb(j + ib - 1, j) for j in range(limit + 1)]
        conv = _kronecker_convolve(ca, cb)
        return max(abs(conv[l] - math.comb(l + ia + ib - 1, l)) for l in range(limit + 1))
    ca = [binom_coeff(alpha, j) for j in range(limit + 1)]
    cb = [binom_coeff(beta, j) for j in range(limit + 1)]
    worst = 0
    for l in range(limit + 1):
        s = sum(ca[j] * cb[l - j] for j in range(l + 1))
        worst = max(worst, abs(s - binom_coeff(alpha + beta, l)))
    return worst


class EulerProduct(NamedTuple):
    value: float
    tail_bound: float  # bound on |log(true) - log(value)|
    primes_used: int


def average_order_constant(alpha: float, cutoff: float = 1e-12) -> EulerProduct:
    """g_alpha(1) = prod_p ((1 - 1/p)^alpha / (1 - alpha/p))^2 for 1 < alpha < 2."""
    if not 1 < alpha < 2:
        raise ValueError("alpha must lie in (1, 2)")
    # stop once alpha(alpha-1)/p^2 < cutoff
    pmax = int(math.sqrt(alpha * (alpha - 1) / cutoff)) + 1
    ps = primes_up_to(pmax).astype(float)
    logf = 2.0 * (alpha * np.log1p(-1.0 / ps) - np.log1p(-alpha / ps))
    P = float(pmax)
    # |log f(p)| <= alpha^2 / (p^2 (1 - alpha/p)) for p > alpha; sum over p > P
    tail = alpha**2 / ((P - 1) * (1 - alpha / P))
    return EulerProduct(math.exp(math.fsum(logf)), tail, len(ps))


class AverageOrder(NamedTuple):
    empirical: float
    predicted: float

    @property
    def ratio(self) -> float:
        return self.empirical / self.predicted


def average_order_ratio(alpha: float, x: int) -> AverageOrder:
    """Mean of d(n) alpha^Omega(n) over n <= x against C_alpha (log x)^(2 alpha - 1)."""
    if not 1 < alpha < 2:
        raise ValueError("alpha must lie in (1, 2)")
    if x < 100:
        raise ValueError("x must be >= 100")
    tab = arithmetic_tables(int(x))
    terms = tab.d[1 : x + 1] * tab.alpha_pow_omega(alpha)[1 : x + 1]
    empirical = math.fsum(terms) / x
    g = average_order_constant(alpha).value
    predicted = g / gamma_real(2 * alpha) * math.log(x) ** (2 * alpha - 1)
    return AverageOrder(empirical, predicted)


class SeriesResidual(NamedTuple):
    residual: float
    tail_bound: float
    partial_sum: float
    target: float


def squarefree_zeta_residual(s: float, N: int) -> SeriesResidual:
    """Partial sums of |mu(n)| n^-s against zeta(s)/zeta(2s)."""
    if not s > 1:
        raise ValueError("s must exceed 1")
    tab = arithmetic_tables(int(N)) if N > 10**5 else ArithmeticTables(int(N))
    n = np.arange(1, N + 1, dtype=float)
    partial = math.fsum(np.abs(tab.moebius[1:]) * n**-s)
    target = zeta_real(s) / zeta_real(2 * s)
    tail = N ** (1 - s) / (s - 1)
    return SeriesResidual(abs(partial - target), tail, partial, target)


def two_omega_residual(s: float, N: int) -> SeriesResidual:
    """Partial sums of 2^omega(n) n^-s against zeta(s)^2/zeta(2s).

    The tail bound uses 2^omega(n) <= d(n) and sum_{n<=x} d(n) <= x(log x + 1).
    """
    if not s > 1:
        raise ValueError("s must exceed 1")
    tab = arithmetic_tables(int(N)) if N > 10**5 else ArithmeticTables(int(N))
    n = np.arange(1, N + 1, dtype=float)
    partial = math.fsum(2.0 ** tab.omega_small[1:] * n**-s)
    target = zeta_real(s) ** 2 / zeta_real(2 * s)
    tail = s * N ** (1 - s) * ((math.log(N) + 1) / (s - 1) + 1 / (s - 1) ** 2)
    return SeriesResidual(abs(partial - target), tail, partial, target)
