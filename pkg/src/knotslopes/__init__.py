"""knotslopes: exact colored Jones polynomials and Jones slope extraction.

The package computes colored Jones polynomials of knots with exact
integer arithmetic, fits quadratic quasi-polynomials to their degree
sequences, and checks the resulting Jones slopes against bundled
boundary-slope data.
"""

from .engine import (bracket_colored_jones, degree_sequence,
                     morton_colored_jones)
from .knots import parse_knot
from .laurent import LaurentPoly, parse_poly
from .quasifit import QuasiPolynomial, fit, slopes
from .verify import SlopeReport, analyze

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "parse_poly",
    "parse_knot",
    "bracket_colored_jones",
    "morton_colored_jones",
    "degree_sequence",
    "QuasiPolynomial",
    "fit",
    "slopes",
    "SlopeReport",
    "analyze",
    "__version__",
]
