"""Exact-arithmetic kernel: polynomials, term orders, Groebner bases, row reduction."""

from .linalg import RowSpace, rank_of
from .orders import DEFAULT_ORDER, TermOrder
from .groebner import (
    GroebnerBasis,
    groebner,
    is_standard,
    iter_standard_monomials,
    leading_term,
    normal_form,
    standard_monomial_count,
)
from .poly import (
    ContextMismatchError,
    ParseError,
    Polynomial,
    VarContext,
    iter_monomials,
    iter_weighted_monomials,
    mono_deg,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    parse_polynomial,
    partial_derivative,
    poly_to_string,
    random_polynomial,
)

__all__ = [
    "ContextMismatchError",
    "DEFAULT_ORDER",
    "GroebnerBasis",
    "ParseError",
    "Polynomial",
    "RowSpace",
    "TermOrder",
    "VarContext",
    "groebner",
    "is_standard",
    "iter_monomials",
    "iter_standard_monomials",
    "iter_weighted_monomials",
    "leading_term",
    "mono_deg",
    "mono_div",
    "mono_divides",
    "mono_lcm",
    "mono_mul",
    "normal_form",
    "parse_polynomial",
    "partial_derivative",
    "poly_to_string",
    "rank_of",
    "random_polynomial",
    "standard_monomial_count",
]
