import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bergman_hankel.arithmetic import divisor_fn
from bergman_hankel.hankel import (
    BiPolynomial,
    HankelMatrix,
    HankelSymbol,
    bergman_frobenius_exact,
    build_bergman_hankel,
    build_hardy_hankel,
    build_two_variable_hardy,
    diagonal_D,
    duality_tail,
    extend_E,
    hilbert_form_eval,
    hilbert_form_pairing,
    hilbert_type_hs_partial,
    hs_norm_bergman,
    hs_norm_hardy,
    inner_a2_disc,
    inner_h2_bidisc,
    kernel_norm_check,
    noncompactness_witness,
    project_P,
    random_disc_symbol,
    separated_products,
    singular_values,
    sparse_hs_norms,
    sv_preservation_residual,
    two_variable_labels,
    weakfac_constants,
)
from bergman_hankel.polydisc import DirichletPolynomial

SQRT2_W = HankelSymbol([0, math.sqrt(2)], "disc", complete=True)


def gram_eigenvalues(M):
    """Descending eigenvalues of the Hermitian matrix M^H M."""
    e = M.entries
    return np.linalg.eigvalsh(e.conj().T @ e)[::-1]


def test_bergman_entries_multiplicative():
    phi = HankelSymbol.from_dict({2: 1.0, 6: 2.0}, n_sym=40)
    M = build_bergman_hankel(phi, 6).entries
    # (m, n) = (2, 3): rho_6 sqrt(d(2) d(3)) / d(6) = 2 * 2 / 4
    assert M[1, 2] == pytest.approx(1.0)
    assert M[0, 1] == pytest.approx(1 * math.sqrt(1 * 2) / 2)
    assert np.allclose(M, M.T)


def test_incomplete_symbol_refuses_large_matrix():
    phi = HankelSymbol(np.ones(10), "multiplicative", complete=False)
    with pytest.raises(ValueError):
        build_bergman_hankel(phi, 4)
    build_bergman_hankel(phi, 3)


def test_disc_builders():
    phi = HankelSymbol([1, 2, 3], "disc", complete=True)
    H = build_hardy_hankel(phi, 3).entries
    assert H[0, 2] == 3 and H[2, 2] == 0
    B = build_bergman_hankel(phi, 2).entries
    assert B[0, 1] == pytest.approx(2 * math.sqrt(2) / 2)


@given(st.integers(0, 2**31))
@settings(max_examples=25, deadline=None)
def test_svd_matches_gram_oracle(seed):
    rng = np.random.default_rng(seed)
    rho = {int(n): complex(*rng.normal(size=2)) for n in rng.integers(1, 60, 6)}
    M = build_bergman_hankel(HankelSymbol.from_dict(rho, n_sym=64), 8)
    s = singular_values(M).values
    np.testing.assert_allclose(s**2, gram_eigenvalues(M), atol=1e-10 * max(1.0, s[0] ** 2))


def test_singular_values_pads_zero_rows():
    s = singular_values(np.array([[1, 0, 0], [0, 0, 0], [0, 0, 2]]))
    assert list(s.values) == [2, 1, 0]
    assert s.norm == 2 and s.mass() == 5


def test_text_roundtrip():
    M = build_bergman_hankel(HankelSymbol.from_dict({2: 1 + 1j, 3: 0.1}, n_sym=20), 4)
    text = M.to_text()
    assert text.startswith("scheme=bergman n_basis=4")
    back = HankelMatrix.from_text(text)
    assert np.array_equal(back.entries, M.entries)


def test_weak_factorization_example():
    c = weakfac_constants()
    np.testing.assert_allclose(c.matrix, [[0, 1], [1, 0]], atol=1e-15)
    assert c.norm_a1 == pytest.approx(2 * math.sqrt(2) / 3, abs=1e-12)
    assert c.hankel_norm == pytest.approx(1, abs=1e-14)
    assert c.c1_bound == pytest.approx(3 / (2 * math.sqrt(2)), abs=1e-12)
    assert c.c1_bound == pytest.approx(math.sqrt(9 / 8), abs=1e-12)
    assert c.tensor_bound(3) == pytest.approx(c.c1_bound**3)


def test_hs_norm_matches_frobenius_mass():
    rho = {2: 1.0, 3: -2.0, 12: 0.5, 30: 1j}
    phi = HankelSymbol.from_dict(rho, n_sym=30)
    # every pair (m, n) with mn <= 30 lies inside the 30 x 30 block
    M = build_bergman_hankel(phi, 30)
    assert M.frobenius_mass() == pytest.approx(hs_norm_bergman(phi) ** 2, rel=1e-13)
    H = build_hardy_hankel(phi, 30)
    assert H.frobenius_mass() == pytest.approx(hs_norm_hardy(phi) ** 2, rel=1e-13)


def test_hs_identity_exact():
    rng = np.random.default_rng(3)
    rho = {int(l): int(v) for l, v in zip(rng.choice(np.arange(2, 201), 20, replace=False), rng.integers(-4, 5, 20))}
    lhs, rhs = bergman_frobenius_exact(rho, 200)
    assert isinstance(lhs, Fraction) and lhs == rhs


def test_separated_products():
    ns = separated_products(5)
    assert ns == [2, 15, 1001, 215441, 95041567]
    for j, n in enumerate(ns, start=1):
        d, d4 = divisor_fn(2, n), divisor_fn(4, n)
        assert Fraction(d**3, d4) == 2**j
        b, h = sparse_hs_norms({n: 1})
        assert h**2 / b**2 == pytest.approx(2**j, rel=1e-12)


def test_E_examples_exact():
    half, third = Fraction(1, 2), Fraction(1, 3)
    Eg = extend_E(np.array([0, 1, 0], dtype=object) + Fraction(0))
    assert Eg == BiPolynomial(np.array([[0, half], [half, 0]], dtype=object))
    E2 = extend_E(np.array([0, 0, 1], dtype=object) + Fraction(0))
    want = np.zeros((3, 3), dtype=object)
    want[2, 0] = want[1, 1] = want[0, 2] = third
    assert E2 == BiPolynomial(want)
    assert extend_E(np.array([Fraction(5)], dtype=object)) == BiPolynomial(np.array([[Fraction(5)]], dtype=object))


@given(st.lists(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False), min_size=1, max_size=20))
@settings(max_examples=50, deadline=None)
def test_DE_identity_and_isometry(b):
    b = np.array(b)
    E = extend_E(b)
    np.testing.assert_allclose(diagonal_D(E)[: len(b)], b, atol=1e-12)
    assert inner_h2_bidisc(E, E) == pytest.approx(inner_a2_disc(b, b), rel=1e-12, abs=1e-300)


def test_D_of_product():
    F = BiPolynomial(np.array([[0, 0], [0, 1]]))
    assert list(diagonal_D(F)) == [0, 0, 1]


def _pad(F, n):
    out = np.zeros((n, n), complex)
    k = F.coeffs.shape[0]
    out[:k, :k] = F.coeffs
    return BiPolynomial(out)


def test_projection_properties():
    rng = np.random.default_rng(0)
    F = BiPolynomial(rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)))
    G = BiPolynomial(rng.normal(size=(4, 4)))
    PF, PG = project_P(F), project_P(G)
    n = PF.coeffs.shape[0]
    assert np.allclose(project_P(PF).coeffs[:n, :n], PF.coeffs)
    resid = BiPolynomial(_pad(F, n).coeffs - PF.coeffs)
    assert abs(inner_h2_bidisc(resid, _pad(PG, n))) < 1e-12
    z1 = BiPolynomial(np.array([[0, 0], [1, 0]]))
    assert np.allclose(project_P(z1).coeffs[:2, :2], [[0, 0.5], [0.5, 0]])


def test_two_variable_example_spectrum():
    labels = two_variable_labels(1)
    assert labels == [(0, 0), (1, 0), (0, 1)]
    s = singular_values(build_two_variable_hardy(SQRT2_W, 1)).values
    np.testing.assert_allclose(s, [1, 1, 0], atol=1e-14)
    r = sv_preservation_residual(SQRT2_W, 1)
    assert r.residual < 1e-14


def test_sv_preservation_random():
    rng = np.random.default_rng(1)
    for _ in range(5):
        r = sv_preservation_residual(random_disc_symbol(rng, 6), 30)
        assert r.residual <= 1e-6
        assert r.convergence <= 1e-10


def test_hilbert_type_partial_sums_converge():
    a = hilbert_type_hs_partial(10**4)
    b = hilbert_type_hs_partial(10**5)
    assert b.value > a.value and b.growth < a.growth


def test_hilbert_form_integral():
    f = DirichletPolynomial({2: 1, 3: 0.5j})
    g = DirichletPolynomial({2: -1, 5: 2})
    e = hilbert_form_eval(f, g)
    assert e.value == pytest.approx(hilbert_form_pairing(f, g), abs=1e-10)
    with pytest.raises(ValueError):
        hilbert_form_pairing(DirichletPolynomial({1: 1}), g)


def test_noncompactness_witness_values():
    vals = [noncompactness_witness(e).value for e in (0.1, 0.05, 0.025)]
    assert vals == pytest.approx([0.7956, 0.7372, 0.7036], abs=1e-4)
    assert min(vals) > 2 / 3


def test_kernel_normalization():
    e = kernel_norm_check(0.5, 10**5)
    assert abs(e.value - 1) <= max(10 * e.error, 1e-3)


def test_duality_tail_settles():
    t = duality_tail(4 / 3, 10**5)
    assert 0 < t.relative_change < 1e-2
    assert t.limit_estimate > t.partial_double
    with pytest.raises(ValueError):
        duality_tail(2.0, 100)
