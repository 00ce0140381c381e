import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bergman_hankel.carleson import (
    EPS_FLOOR,
    TrigPolynomial,
    boundary_layer_exact,
    boundary_layer_integral,
    carleson2_embedding,
    carleson2_l2mass,
    carleson2_ratio,
    diagonal_measure_gap,
    dl2_polynomial,
    dl2_witness,
    dl2_witness_exact,
    dpnorm_constants,
    loglog_slope,
    poisson_extend,
    q_plus,
    rational_index,
    smooth_two_omega_sum,
    two_omega_series,
)
from bergman_hankel.polydisc import PolydiscPolynomial
from bergman_hankel.special import beta_real, zeta_real


def test_rational_index():
    assert rational_index(Fraction(2, 3)) == (1, -1)
    assert rational_index(12) == (2, 1)
    assert q_plus((1, -1)) == 6
    with pytest.raises(ValueError):
        rational_index(0)


def test_trig_polynomial():
    f = TrigPolynomial.from_rationals({Fraction(2, 3): 1, 2: 1j})
    assert f.nvars == 2 and not f.is_analytic()
    assert f.l2_norm() == pytest.approx(math.sqrt(2))


@given(st.complex_numbers(max_magnitude=0.9, allow_nan=False), st.complex_numbers(max_magnitude=0.9, allow_nan=False))
@settings(max_examples=50, deadline=None)
def test_poisson_of_analytic_is_evaluation(w1, w2):
    f = TrigPolynomial({(1, 2): 1.5, (0, 3): -1j, (): 2})
    assert f.is_analytic()
    assert poisson_extend(f, [w1, w2]) == pytest.approx(1.5 * w1 * w2**2 - 1j * w2**3 + 2, abs=1e-12)


def test_poisson_conjugate_frequency():
    f = TrigPolynomial({(-1,): 1})
    assert poisson_extend(f, [0.5j]) == pytest.approx(-0.5j)


def test_dl2_witness():
    assert dl2_witness_exact() == Fraction(43, 36)
    assert dl2_polynomial().l2_norm() == pytest.approx(1.0, abs=1e-15)
    assert dl2_witness() == pytest.approx(43 / 36, abs=1e-12)


@pytest.mark.parametrize("p", [0.5, 1.0, 1.5])
def test_dpnorm_constants(p):
    c = dpnorm_constants(p)
    assert c.left == pytest.approx(2 / (2 + p), abs=1e-15)
    assert c.right == pytest.approx(2 / (p * beta_real(p / 2, 0.5)), abs=1e-15)
    assert c.not_contractive and c.gap > 0
    assert abs(c.left - c.left_quad) < 1e-8
    assert abs(c.right - c.right_quad) < 1e-8


def test_dpnorm_limits_and_beta_bound():
    c = dpnorm_constants(1.999)
    assert c.left == pytest.approx(0.5, abs=1e-3) and c.right == pytest.approx(0.5, abs=1e-3)
    assert beta_real(0.5, 0.5) > 3
    with pytest.raises(ValueError):
        dpnorm_constants(2.0)


def test_diagonal_measure_even_p():
    rng = np.random.default_rng(5)
    for _ in range(10):
        F = PolydiscPolynomial({tuple(rng.integers(0, 3, 4)): complex(*rng.normal(size=2)) for _ in range(5)})
        for p in (2, 4):
            assert diagonal_measure_gap(F, p).value <= 1e-12


def test_diagonal_measure_p1_witness_and_constant():
    e = diagonal_measure_gap(PolydiscPolynomial({(1, 0): 0.5, (0, 1): 0.5}), 1, tol=1e-9)
    assert e.value == pytest.approx(2 / 3 - 2 / math.pi, abs=max(1e-7, 10 * e.error))
    assert e.value > 0
    assert abs(diagonal_measure_gap(PolydiscPolynomial({(): 2.0}), 1).value) < 1e-12


def test_l2mass_full_and_truncated():
    full = carleson2_l2mass(0.1)
    assert full == pytest.approx(zeta_real(1.2) ** 2 / zeta_real(2.4), rel=1e-14)
    t = [carleson2_l2mass(0.1, d) for d in (10, 100, 1000)]
    assert t[0] < t[1] < t[2] < full


def test_l2mass_slope_tends_to_minus_two():
    eps = [0.2, 0.1, 0.05, 0.025]
    m = [carleson2_l2mass(e) for e in eps]
    slopes = [loglog_slope(a, x, b, y) for a, x, b, y in zip(eps, m, eps[1:], m[1:])]
    assert all(abs(b + 2) < abs(a + 2) for a, b in zip(slopes, slopes[1:]))
    assert -2.3 <= slopes[-1] <= -1.7


def test_two_omega_series_full():
    assert two_omega_series(2.0) == pytest.approx(zeta_real(2.0) ** 2 / zeta_real(4.0))


def test_smooth_sum_cross_check():
    s = smooth_two_omega_sum(1.5, 500, N=10**5)
    assert abs(s.partial - s.product) <= s.tail_bound


def test_carleson2_full_product_doubling():
    r = [carleson2_ratio(e).ratio for e in (0.2, 0.1, 0.05)]
    f = [b / a for a, b in zip(r, r[1:])]
    assert all(1.4 <= x <= 2.8 for x in f)


def test_carleson2_truncated_monotone():
    r = [carleson2_ratio(e, 500).ratio for e in (0.2, 0.1, 0.05)]
    assert r[0] < r[1] < r[2]


def test_carleson2_embedding_error_small():
    e = carleson2_embedding(0.05)
    assert e.error < 1e-8 * e.value


def test_eps_floor():
    with pytest.raises(ValueError):
        carleson2_ratio(EPS_FLOOR / 2)
    with pytest.raises(ValueError):
        carleson2_ratio(0.6)
    r = carleson2_ratio(0.5, 3)
    assert math.isfinite(r.ratio) and r.ratio > 0


@pytest.mark.parametrize("eps", [0.5, 0.1, 0.05, 0.01])
def test_boundary_layer(eps):
    assert boundary_layer_integral(eps).value == pytest.approx(boundary_layer_exact(eps), rel=1e-9)
