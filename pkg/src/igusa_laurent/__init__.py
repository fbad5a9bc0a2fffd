"""Local zeta functions of non-degenerate Laurent polynomials in two variables."""

from .laurent import LaurentPolynomial, parse

__all__ = ["LaurentPolynomial", "parse"]
__version__ = "0.1.0"
