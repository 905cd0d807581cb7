"""Exact Wigner 3nj symbols and semiclassical limits of the first-kind 15j symbol."""

from .algebraic import AlgebraicNumber, alg_add, alg_mul, alg_to_float
from .factorials import FactorialFactors, factorial_factors
from .halfint import HalfInt, triangle_ok

__version__ = "0.1.0"

__all__ = [
    "AlgebraicNumber",
    "FactorialFactors",
    "HalfInt",
    "alg_add",
    "alg_mul",
    "alg_to_float",
    "factorial_factors",
    "triangle_ok",
]
