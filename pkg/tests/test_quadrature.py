import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bergman_hankel.quadrature import (
    DiscQuadrature,
    QuadratureOrderError,
    check_exactness,
    circle_means,
    exact_rule,
    gauss_legendre,
    graded_integral,
    sample_circles,
)


@pytest.mark.parametrize("alpha", [1.5, 2.0, 3.0, 4.5])
def test_radial_moments(alpha):
    # int |w|^(2k) dm_alpha = k! Gamma(alpha) / Gamma(alpha + k)... via beta
    q = DiscQuadrature(alpha, 12, 8)
    for k in range(20):
        exact = math.exp(math.lgamma(k + 1) + math.lgamma(alpha) - math.lgamma(alpha + k))
        assert q.weights @ q.radii ** (2 * k) == pytest.approx(exact, rel=1e-12)


def test_weights_sum_to_one_and_hardy_rule():
    assert DiscQuadrature(2.0, 5, 4).weights.sum() == pytest.approx(1.0)
    h = DiscQuadrature(1.0, 1, 16)
    assert list(h.radii) == [1.0] and h.radial_exactness == math.inf


def test_angular_rule_exact_on_trig_polynomials():
    q = DiscQuadrature(2.0, 4, 16)
    z = q.points()
    assert z.shape == (4, 16)
    vals = np.abs(z) ** 2 + (z**5).real
    assert q.integrate(vals) == pytest.approx(0.5, rel=1e-14)


def test_sample_circles_folds_high_degrees():
    coeffs = np.zeros(20, complex)
    coeffs[17] = 1
    vals = sample_circles(coeffs, np.array([1.0]), 8)
    theta = 2 * np.pi * np.arange(8) / 8
    assert np.allclose(vals[0], np.exp(17j * theta))


def test_exact_rule_and_check():
    q = exact_rule(2.0, 10, 4)
    check_exactness(q, 10, 4)
    with pytest.raises(QuadratureOrderError):
        check_exactness(DiscQuadrature(2.0, 3, 8), 10, 2)


def test_origin_power_factored_out():
    q = DiscQuadrature(2.0, 10, 8, origin_power=3.0)
    # weight t^3 (1-t)^0 on [0,1] integrates 1 to 1/4
    assert q.weights.sum() == pytest.approx(0.25, rel=1e-13)


def test_circle_means_nonpolynomial():
    means, errs = circle_means(np.array([1, 1], complex), np.array([1.0]), 1.0, 64, 1e-12, 1 << 16)
    # the kink at theta = pi limits convergence to O(M^-2); the estimate must cover it
    assert abs(means[0] - 4 / math.pi) <= errs[0] < 1e-8


@given(st.floats(0.0, 3.0), st.floats(0.1, 2.0))
@settings(max_examples=40, deadline=None)
def test_gauss_legendre_polynomials(a, width):
    x, w = gauss_legendre(a, a + width, 6)
    assert w @ x**5 == pytest.approx(((a + width) ** 6 - a**6) / 6, rel=1e-12)


@pytest.mark.parametrize("eps", [0.5, 0.1, 0.01])
def test_graded_integral_boundary_layer(eps):
    est = graded_integral(lambda s: (s + eps) ** -4.0, 0.0, 1.0, eps)
    exact = (eps**-3 - (1 + eps) ** -3) / 3
    assert est.value == pytest.approx(exact, rel=1e-9)
    assert est.error < 1e-6 * exact
