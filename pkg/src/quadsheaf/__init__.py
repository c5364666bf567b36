"""Exact computations for moduli of one-dimensional sheaves on P^1 x P^1."""

from .exactpoly import BiPoly, TruncSeries, UPoly, geometric_poly, trunc_product
from .lesolve import Annot, ExactSeq, Status, Term, solve, solve_system

__all__ = [
    "Annot",
    "BiPoly",
    "ExactSeq",
    "Status",
    "Term",
    "TruncSeries",
    "UPoly",
    "geometric_poly",
    "solve",
    "solve_system",
    "trunc_product",
]
