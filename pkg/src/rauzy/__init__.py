"""Exact computations around the Rauzy gasket and Arnoux-Rauzy dynamics.

Modules: core (rationals, simplex points, matrices), gasket, iet, words,
measures, isometries, suspension, novikov, fractal, cli.
"""

from .core import BARYCENTER, SimplexPoint, normalize_projective, parse_rational, parse_word

__all__ = ["BARYCENTER", "SimplexPoint", "normalize_projective", "parse_rational", "parse_word"]
__version__ = "0.1.0"
