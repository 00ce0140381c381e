import math

import pytest
from hypothesis import given, settings, strategies as st

from bergman_hankel.polydisc import (
    DirichletPolynomial,
    PolydiscPolynomial,
    ahl_gap,
    bohr_lift,
    bohr_unlift,
    dirichlet_pointwise_gap,
    helson_gap,
    is_hlin_exponent,
    norm_a2alpha,
    polydisc_norm_estimate,
    polydisc_norm_quad,
    polydisc_weissler_gap,
    random_dirichlet_suite,
    reproducing_kernel,
    smooth_support,
    translate,
    translation_radii,
    weisslerhalf_gap,
    weisslerhalf_threshold,
)
from bergman_hankel.special import zeta_real

dirichlet = st.dictionaries(
    st.integers(1, 2000), st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False), max_size=8
).map(DirichletPolynomial)

SUITE = random_dirichlet_suite(6, seed=9, nvars=2) + random_dirichlet_suite(3, seed=10, nvars=3)


def test_dirichlet_basics():
    f = DirichletPolynomial({1: 1, 4: 2, 3: 0})
    assert list(f.support) == [1, 4] and f.max_index == 4
    assert f(1.0) == pytest.approx(1.5)
    assert (f * DirichletPolynomial({2: 1})) == DirichletPolynomial({2: 1, 8: 2})
    with pytest.raises(ValueError):
        DirichletPolynomial({0: 1})


def test_csv_roundtrip():
    f = DirichletPolynomial({1: 1 + 2j, 6: -0.25})
    text = f.to_csv()
    assert text.splitlines()[0] == "n,re,im"
    assert DirichletPolynomial.from_csv(text) == f


@given(dirichlet)
@settings(max_examples=100, deadline=None)
def test_lift_bijection(f):
    assert bohr_unlift(bohr_lift(f)) == f


@given(dirichlet, dirichlet)
@settings(max_examples=50, deadline=None)
def test_lift_multiplicative(f, g):
    P, Q = bohr_lift(f * g), bohr_lift(f) * bohr_lift(g)
    for k in set(P.coeffs) | set(Q.coeffs):
        assert abs(P.coeffs.get(k, 0) - Q.coeffs.get(k, 0)) <= 1e-12 * (1 + abs(Q.coeffs.get(k, 0)))


def test_lift_example():
    F = bohr_lift(DirichletPolynomial({1: 1, 2: 1, 3: 1, 6: 1}))
    assert F == PolydiscPolynomial({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    assert F.nvars == 2 and F.degrees() == (1, 1)


@given(dirichlet, st.floats(0.01, 2), st.floats(0.01, 2))
@settings(max_examples=50, deadline=None)
def test_translations_compose(f, a, b):
    lhs, rhs = translate(translate(f, a), b), translate(f, a + b)
    for n in f.support:
        assert lhs[n] == pytest.approx(rhs[n], rel=1e-13, abs=1e-300)


def test_translation_is_dilation():
    f = DirichletPolynomial({2: 1, 3: 1, 12: 1})
    r = translation_radii(0.5, 2)
    lhs, rhs = bohr_lift(translate(f, 0.5)), bohr_lift(f).dilate(r)
    assert lhs.coeffs.keys() == rhs.coeffs.keys()
    for k in lhs.coeffs:
        assert lhs.coeffs[k] == pytest.approx(rhs.coeffs[k], rel=1e-14)


@pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0])
def test_p2_quadrature_matches_coefficients(alpha):
    for f in SUITE:
        assert polydisc_norm_quad(bohr_lift(f), 2, alpha) == pytest.approx(norm_a2alpha(f, alpha), rel=1e-10)


def test_quadrature_limited_to_three_variables():
    F = PolydiscPolynomial({(0, 0, 0, 1): 1})
    with pytest.raises(ValueError):
        polydisc_norm_estimate(F, 1)


def test_non_even_norm_product_function():
    # tensor product: norm factorizes
    F = PolydiscPolynomial({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1})
    from bergman_hankel.disc import norm_quad

    one = norm_quad([1, 1], 1, 2, tol=1e-12)
    est = polydisc_norm_estimate(F, 1)
    assert abs(est.value - one**2) <= max(10 * est.error, 1e-6)


@pytest.mark.parametrize("p,q", [(2, 4), (1, 2)])
def test_polydisc_weissler(p, q):
    for f in SUITE[:5]:
        g = polydisc_weissler_gap(f, p, q, math.sqrt(p / q))
        assert g.value <= max(1e-8, 10 * g.error)


@pytest.mark.parametrize("p,q", [(2, 4), (1, 2)])
def test_weisslerhalf(p, q):
    eps = weisslerhalf_threshold(p, q)
    assert 2**-eps == pytest.approx(math.sqrt(p / q))
    for f in SUITE[:5]:
        g = weisslerhalf_gap(f, p, q, eps)
        assert g.value <= max(1e-8, 10 * g.error)


def test_helson_and_ahl():
    for f in SUITE:
        h = helson_gap(f)
        assert h.value >= -max(1e-8, 10 * h.error)
    for f in SUITE[:6]:
        for p in (1.0, 4 / 3, 2.0):
            for g in ahl_gap(f, p).values():
                assert g.value >= -max(1e-8, 10 * g.error)


def test_ahl_keys():
    f = DirichletPolynomial({1: 1, 2: 1})
    assert set(ahl_gap(f, 1.0)) == {"direct", "dilation_path", "full"}
    assert set(ahl_gap(f, 1.5)) == {"direct", "dilation_path"}
    assert is_hlin_exponent(4 / 3) and not is_hlin_exponent(1.5)


def test_dirichlet_pointwise():
    g = dirichlet_pointwise_gap(DirichletPolynomial({1: 3}), 2, 1.0)
    assert g.value == pytest.approx((zeta_real(2.0) - 1) * 3, rel=1e-12)
    assert dirichlet_pointwise_gap(DirichletPolynomial({1: 1, 2: 1}), 2, 1.0).value > 0
    with pytest.raises(ValueError):
        dirichlet_pointwise_gap(DirichletPolynomial({1: 1}), 2, 0.5)


def test_kernel_direction_shrinks_gap():
    sigma = 1.0
    k_small, k_big = reproducing_kernel(sigma, 2, 1), reproducing_kernel(sigma, 3, 4)
    a = dirichlet_pointwise_gap(k_small, 2, sigma).value / norm_a2alpha(k_small, 2)
    b = dirichlet_pointwise_gap(k_big, 2, sigma).value / norm_a2alpha(k_big, 2)
    assert 0 <= b < a


def test_smooth_support():
    assert smooth_support(2, 1) == [1, 2, 3, 6]
