import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bergman_hankel.arithmetic import (
    ArithmeticTables,
    average_order_ratio,
    binom_coeff,
    binom_coeffs,
    convolution_residual,
    dirichlet_convolve,
    divisor_fn,
    factorize,
    index_to_integer,
    multi_binom,
    primes_first,
    primes_up_to,
    squarefree_zeta_residual,
    sum_convolution_residual,
    two_omega_residual,
)

TABLES = ArithmeticTables(5000)


def test_primes():
    assert list(primes_up_to(30)) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    t = primes_first(1000)
    assert len(t.primes) == 1000 and t.primes[-1] == 7919
    assert t.index(7) == 3


@given(st.integers(min_value=1, max_value=10**6))
@settings(max_examples=200, deadline=None)
def test_factorize_roundtrip(n):
    assert index_to_integer(factorize(n)) == n


def test_factorize_examples():
    assert factorize(1) == ()
    assert factorize(12) == (2, 1)
    assert factorize(5) == (0, 0, 1)


def test_binomial_coefficients():
    assert binom_coeff(2, 5) == 6
    assert binom_coeff(Fraction(1, 2), 2) == Fraction(3, 8)
    assert np.allclose(binom_coeffs(1.5, 4), [1, 1.5, 1.875, 2.1875])


def test_divisor_fn_examples():
    assert divisor_fn(2, 12) == 6
    assert divisor_fn(1, 12) == 1
    assert divisor_fn(4, 6) == 16
    assert multi_binom(2, (2, 1)) == 6


def test_table_columns():
    t = TABLES
    assert t.d[12] == 6
    assert t.moebius[30] == -1 and t.moebius[12] == 0 and t.moebius[1] == 1
    assert t.omega_big[12] == 3 and t.omega_small[12] == 2
    assert t.d_alpha(2)[0] == 0
    with pytest.raises(ValueError):
        t.d_alpha(2)[5] = 0


@given(st.integers(1, 70), st.integers(1, 70))
@settings(max_examples=200, deadline=None)
def test_d_alpha_multiplicative(m, n):
    if math.gcd(m, n) != 1:
        return
    for alpha in (2, 3, 1.5):
        da = TABLES.d_alpha(alpha)
        assert da[m * n] == pytest.approx(da[m] * da[n], rel=1e-13)


@given(st.integers(1, 5000))
@settings(max_examples=200, deadline=None)
def test_table_matches_direct_divisor_fn(n):
    assert TABLES.d_alpha(3)[n] == divisor_fn(3, n)


@pytest.mark.parametrize("alpha,beta", [(1, 1), (1, 3), (2, 2), (4, 4), (3, 1)])
def test_multiplicative_convolution_exact(alpha, beta):
    assert convolution_residual(alpha, beta, 3000) == 0


def test_multiplicative_convolution_fractional():
    assert convolution_residual(0.5, 1.5, 2000) < 1e-11


def test_dirichlet_convolve_moebius_inverts_one():
    ones = np.ones(101, dtype=np.int64)
    ones[0] = 0
    out = dirichlet_convolve(ArithmeticTables(100).moebius, ones, 100)
    assert out[1] == 1 and not np.any(out[2:])


def test_kronecker_path_matches_direct_sum():
    from bergman_hankel.arithmetic import _kronecker_convolve

    rng = np.random.default_rng(0)
    a = [int(x) for x in rng.integers(0, 10**12, 50)]
    b = [int(x) for x in rng.integers(0, 10**12, 50)]
    direct = [sum(a[j] * b[l - j] for j in range(l + 1)) for l in range(50)]
    assert _kronecker_convolve(a, b) == direct
    # the fraction path and the integer path agree on integer parameters
    assert sum_convolution_residual(Fraction(2), Fraction(3), 80) == sum_convolution_residual(2, 3, 80) == 0


def test_sum_convolution():
    assert sum_convolution_residual(2, 3, 40) == 0
    assert sum_convolution_residual(Fraction(1, 3), Fraction(2, 3), 30) == 0


def test_d4_bounded_by_cube():
    assert np.all(TABLES.d_alpha(4)[1:] <= TABLES.d[1:] ** 3)


def test_series_residuals_within_tail():
    for r in (squarefree_zeta_residual(2.0, 10**4), two_omega_residual(2.0, 10**4)):
        assert r.residual <= r.tail_bound


def test_average_order_improves():
    a = average_order_ratio(1.5, 10**4).ratio
    b = average_order_ratio(1.5, 10**5).ratio
    assert abs(b - 1) < abs(a - 1)


def test_to_csv_header():
    text = ArithmeticTables(10).to_csv(upto=3)
    assert text.splitlines()[0].startswith("n,")
    assert len(text.splitlines()) == 4
