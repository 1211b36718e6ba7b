"""Multivariate polynomial engine over Q(q)."""

from toricsh.polyalg.groebner import (
    GroebnerBasis,
    groebner,
    ideal_contains,
    ideals_equal,
    mult_matrix,
    normal_form,
    quotient_basis,
)
from toricsh.polyalg.linalg import Matrix, bareiss_det, char_poly
from toricsh.polyalg.polys import MPoly, Monomial, MonomialOrder, parse_poly

__all__ = [
    "GroebnerBasis",
    "MPoly",
    "Matrix",
    "Monomial",
    "MonomialOrder",
    "bareiss_det",
    "char_poly",
    "groebner",
    "ideal_contains",
    "ideals_equal",
    "mult_matrix",
    "normal_form",
    "parse_poly",
    "quotient_basis",
]
