"""Mod-p Steenrod reduced powers on polynomial algebras and the hit problem."""

from ._backend import BACKEND
from .errors import BudgetExceeded, ConfigurationError, UsageError
from .hit import HitReport, QuotientPresentation, hit_generators, is_hit, quotient, reduce
from .poly import Polynomial, enumerate_monomials, parse_polynomial, render, substitute_linear
from .steenrod import HitDecomposition, cartan_check, lucas_binom, p_k, p_k_monomial, pth_power_witness

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "ConfigurationError",
    "HitDecomposition",
    "HitReport",
    "Polynomial",
    "QuotientPresentation",
    "UsageError",
    "cartan_check",
    "enumerate_monomials",
    "hit_generators",
    "is_hit",
    "lucas_binom",
    "p_k",
    "p_k_monomial",
    "parse_polynomial",
    "pth_power_witness",
    "quotient",
    "reduce",
    "render",
    "substitute_linear",
]
