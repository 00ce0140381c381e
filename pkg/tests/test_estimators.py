import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from bergman_hankel.disc import norm_a2alpha_coeff, norm_quad
from bergman_hankel.estimators import (
    BergmanNorm,
    DiagonalExtension,
    Dilation,
    DirichletTranslation,
    HankelSpectrum,
    check_coefficients,
)

X = np.array([[1.0, 2.0, 3.0], [0.0, 1j, 0.5]])


def test_check_coefficients():
    assert check_coefficients([[1, 2]]).dtype == complex
    for bad in ([1, 2], [[np.nan]], np.zeros((0, 2)), [[1, 2]]):
        with pytest.raises((ValueError, TypeError)):
            check_coefficients(bad, min_features=3 if np.ndim(bad) == 2 and np.size(bad) == 2 else 1)


def test_clone_and_params():
    d = clone(Dilation(r=0.3))
    assert d.get_params() == {"r": 0.3}
    assert HankelSpectrum(n_basis=3).set_params(scheme="hardy").scheme == "hardy"


def test_not_fitted_and_width():
    with pytest.raises(NotFittedError):
        Dilation().transform(X)
    est = Dilation().fit(X)
    with pytest.raises(ValueError):
        est.transform(X[:, :2])


def test_invalid_params_rejected_at_fit():
    with pytest.raises(ValueError):
        Dilation(r=2).fit(X)
    with pytest.raises(ValueError):
        DirichletTranslation(eps=0).fit(X)
    with pytest.raises(ValueError):
        HankelSpectrum(scheme="other").fit(X)


def test_dilation_and_translation():
    assert np.allclose(Dilation(0.5).fit_transform(X)[0], [1, 1, 0.75])
    out = DirichletTranslation(1.0).fit_transform(X)
    assert np.allclose(out[0], [1, 1, 1])


def test_diagonal_extension_roundtrip():
    d = DiagonalExtension().fit(X)
    Y = d.transform(X)
    assert Y.shape == (2, 9)
    assert np.allclose(d.inverse_transform(Y), X)


def test_bergman_norm_column():
    col = BergmanNorm().fit_transform(X)
    assert col.shape == (2, 1)
    assert col[0, 0] == pytest.approx(norm_a2alpha_coeff(X[0], 2))
    assert BergmanNorm(p=1).fit_transform(X[:1])[0, 0] == pytest.approx(norm_quad(X[0], 1, 2))


def test_hankel_spectrum_in_pipeline():
    pipe = make_pipeline(Dilation(0.5), HankelSpectrum(n_basis=2))
    out = pipe.fit_transform(np.array([[0, np.sqrt(2) / 0.5]]))
    assert np.allclose(out, [[1, 1]])
