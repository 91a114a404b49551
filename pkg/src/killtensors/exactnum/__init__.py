"""Exact arithmetic: rationals, sparse rational matrices, polynomials, series."""

from fractions import Fraction as Rational

from .matrix import Echelon, ExactMatrix, column_rank, echelon_of_rows, kernel_basis, rank
from .poly import Poly, RatFunc, cauchy_product, poly_gcd, poly_integrate, series_coeffs

__all__ = [
    "Rational",
    "ExactMatrix",
    "Echelon",
    "echelon_of_rows",
    "column_rank",
    "rank",
    "kernel_basis",
    "Poly",
    "RatFunc",
    "poly_gcd",
    "poly_integrate",
    "series_coeffs",
    "cauchy_product",
]
