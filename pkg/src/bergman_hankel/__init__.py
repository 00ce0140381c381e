"""Numerical verification toolkit for contractive inequalities on Bergman spaces
of the disc, the polydisc and Dirichlet series, and for multiplicative Hankel forms."""

__version__ = "0.1.0"

from .disc import DiscPolynomial, SpaceParams, norm_a2alpha_coeff, norm_estimate, norm_quad
from .hankel import HankelMatrix, HankelSymbol, singular_values
from .polydisc import DirichletPolynomial, PolydiscPolynomial, bohr_lift, bohr_unlift
from .quadrature import DiscQuadrature, Estimate
from .report import SuiteConfig, VerificationReport

__all__ = [
    "__version__",
    "DiscPolynomial",
    "DiscQuadrature",
    "DirichletPolynomial",
    "Estimate",
    "HankelMatrix",
    "HankelSymbol",
    "PolydiscPolynomial",
    "SpaceParams",
    "SuiteConfig",
    "VerificationReport",
    "bohr_lift",
    "bohr_unlift",
    "norm_a2alpha_coeff",
    "norm_estimate",
    "norm_quad",
    "singular_values",
]
