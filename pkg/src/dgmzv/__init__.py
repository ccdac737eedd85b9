"""Exact computations for depth-graded motivic multiple zeta values.

Submodules: ``linalg`` (exact matrices over Q), ``series`` (generating
functions), ``poly`` (polynomial representations), ``ihara`` (circle product
and Lie brackets), ``period`` (period polynomials), ``tasaka`` (coaction
matrices), ``verifier`` (check suites) and ``cli``.
"""
from .ihara import check_nondegenerate, circle_product, dg_span, evaluate_bracket, ihara_bracket, lyndon_basis
from .linalg import QMatrix, Subspace, nullspace, rank
from .period import PeriodPolynomial, period_space
from .poly import MultiPoly, enumerate_compositions, sigma
from .tasaka import b_coeff, build_C, build_E, build_E_shifted, d_matrix, w_space

__version__ = "0.1.0"

__all__ = [
    "MultiPoly", "PeriodPolynomial", "QMatrix", "Subspace",
    "b_coeff", "build_C", "build_E", "build_E_shifted", "check_nondegenerate", "circle_product",
    "d_matrix", "dg_span", "enumerate_compositions", "evaluate_bracket", "ihara_bracket",
    "lyndon_basis", "nullspace", "period_space", "rank", "sigma", "w_space",
]
