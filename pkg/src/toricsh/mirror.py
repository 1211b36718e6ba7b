"""Mirror Landau-Ginzburg side of split negative bundles."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from toricsh.algebra import (
    AlgebraPresentation,
    QuotientAlgebra,
    build_quotient,
    element_char_poly,
    is_semisimple,
    is_square_free,
    minimal_polynomial,
)
from toricsh.coeffs import ZERO, RatFunc
from toricsh.exceptions import DomainError
from toricsh.geometry.bundles import BundleModel
from toricsh.geometry.surgery import (
    Leaf,
    ModelEvaluation,
    ModelExpr,
    iter_pieces,
    piece_label,
    piece_rings,
    torus_bound,
)
from toricsh.polyalg.groebner import groebner, normal_form
from toricsh.polyalg.polys import MPoly

logger = logging.getLogger(__name__)

LaurentExponent = tuple[int, ...]

CRITICAL_VALUE_NOTE = (
    "critical value W(z_c) is computed as (n2 - m*n1 + 1)*x by direct substitution; "
    "the printed form (n2 - m*n + 1)*x would vanish for line bundles"
)


@dataclass(frozen=True)
class Superpotential:
    """Laurent polynomial in z1..zn with coefficients in Q(q)."""

    n: int
    laurent_terms: Mapping[LaurentExponent, RatFunc]

    def variables(self) -> tuple[str, ...]:
        return tuple(f"z{i + 1}" for i in range(self.n))

    def __str__(self) -> str:
        names = self.variables()
        ordered = sorted(
            self.laurent_terms.items(),
            key=lambda item: (sorted(item[0]) != [0] * (self.n - 1) + [1], [-e for e in item[0]]),
        )
        pieces = []
        for exps, coeff in ordered:
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e != 0:
                    factors.append(f"{name}^{e}")
            mono = "*".join(factors)
            pieces.append(mono if coeff.is_one() else f"{coeff}*{mono}")
        return " + ".join(pieces)


@dataclass(frozen=True)
class CriticalFamily:
    """z_c = (x, ..., x, -m x, ..., -m x) subject to x^d = K."""

    pattern: tuple[int, ...]
    degree: int
    constant: RatFunc
    critical_value_coefficient: int
    critical_value_reduced: MPoly

    @property
    def count(self) -> int:
        return self.degree

    @property
    def constraint(self) -> MPoly:
        x = MPoly.var("x", ("x",))
        return x**self.degree - MPoly.constant(self.constant, ("x",))

    @property
    def critical_value(self) -> MPoly:
        return MPoly.var("x", ("x",)) * self.critical_value_coefficient


@dataclass(frozen=True)
class HmsVerdict:
    dims_match: bool
    semisimple: bool
    critical_values_annihilated: bool
    charpolys_match: bool

    @property
    def ok(self) -> bool:
        return (
            self.dims_match
            and self.semisimple
            and self.critical_values_annihilated
            and self.charpolys_match
        )


@dataclass(frozen=True)
class LeafCensus:
    path: str
    piece: str
    tori: int
    local_systems_per_torus: int
    m0_min_poly: str
    m0_distinct: bool

    @property
    def total_branes(self) -> int:
        return self.tori * self.local_systems_per_torus


@dataclass(frozen=True)
class BraneCensus:
    leaves: tuple[LeafCensus, ...]
    torus_bound: int

    @property
    def total_branes(self) -> int:
        return sum(leaf.total_branes for leaf in self.leaves)

    @property
    def matches_torus_bound(self) -> bool:
        return self.total_branes == self.torus_bound


def monotonicity_constant(b: BundleModel) -> Fraction:
    """(1 + n2 - m n1) / (m n1); zero in the Calabi-Yau case."""
    return Fraction(1 + b.n2 - b.m * b.n1, b.m * b.n1)


def build_superpotential(b: BundleModel) -> Superpotential:
    """W = z1 + ... + zn + q^{n2+1-mn1} (n2+1)^{mn1} z1^-1...z_{n2}^-1 z_{n2+1}^m...z_n^m."""
    n = b.n
    terms: dict[LaurentExponent, RatFunc] = {}
    for j in range(n):
        terms[tuple(1 if i == j else 0 for i in range(n))] = RatFunc.of(1)
    special = tuple([-1] * b.n2 + [b.m] * b.n1)
    terms[special] = RatFunc.q(b.q_exponent, (b.n2 + 1) ** (b.m * b.n1))
    return Superpotential(n, terms)


def _log_derivative(W: Superpotential, j: int) -> dict[LaurentExponent, RatFunc]:
    """z_j * dW/dz_j."""
    return {
        exps: coeff * RatFunc.of(exps[j])
        for exps, coeff in W.laurent_terms.items()
        if exps[j] != 0
    }


def _evaluate_on_pattern(
    terms: Mapping[LaurentExponent, RatFunc],
    pattern: tuple[int, ...],
    degree: int,
    constant: RatFunc,
) -> MPoly:
    """Substitute z_i = pattern_i * x and reduce powers of x with x^degree = constant."""
    reduced: dict[tuple[int], RatFunc] = {}
    for exps, coeff in terms.items():
        factor = Fraction(1)
        for p, e in zip(pattern, exps):
            factor *= Fraction(p) ** e
        power = sum(exps)
        rest = power % degree
        value = coeff * RatFunc.of(factor) * constant ** ((power - rest) // degree)
        key = (rest,)
        reduced[key] = reduced.get(key, ZERO) + value
    return MPoly(("x",), reduced)


def verify_critical_family(W: Superpotential, b: BundleModel) -> CriticalFamily:
    """Check that z_c = (x,...,x,-mx,...,-mx) is critical modulo x^d = K."""
    if W.n != b.n:
        raise DomainError(f"superpotential has {W.n} variables, model has dimension {b.n}")
    degree = b.q_exponent
    if degree < 1:
        raise DomainError(
            f"{b.describe()} is Calabi-Yau: there is no monotone critical family",
            code="calabi_yau_mirror",
        )
    pattern = tuple([1] * b.n2 + [-b.m] * b.n1)
    constant = RatFunc.q(degree, b.qh_constant)
    for j in range(W.n):
        residue = _evaluate_on_pattern(_log_derivative(W, j), pattern, degree, constant)
        if not residue.is_zero():
            raise DomainError(
                f"critical family invalid: z{j + 1}*dW/dz{j + 1} reduces to {residue}",
                code="critical_family_invalid",
            )
    value = _evaluate_on_pattern(W.laurent_terms, pattern, degree, constant)
    coefficient = b.n2 - b.m * b.n1 + 1
    expected = _evaluate_on_pattern({(1,): RatFunc.of(coefficient)}, (1,), degree, constant)
    if value != expected:
        raise DomainError(
            f"critical value {value} differs from {coefficient}*x", code="critical_family_invalid"
        )
    logger.debug("Critical family of %s verified: x^%d = %s", b.describe(), degree, constant)
    return CriticalFamily(pattern, degree, constant, coefficient, value)


def _polynomial_image(
    terms: Mapping[LaurentExponent, RatFunc], variables: tuple[str, ...]
) -> MPoly:
    """Clear negative exponents with u = 1/(z1...zn)."""
    out: dict[tuple[int, ...], RatFunc] = {}
    for exps, coeff in terms.items():
        shift = max(0, -min(exps))
        mono = tuple(e + shift for e in exps) + (shift,)
        out[mono] = out.get(mono, ZERO) + coeff
    return MPoly(variables, out)


def jacobi_ring(W: Superpotential) -> QuotientAlgebra:
    """K[z^{+-1}]/(z_j dW/dz_j) as a quotient of K[z1..zn, u] with u*z1*...*zn = 1."""
    variables = W.variables() + ("u",)
    relations = [_polynomial_image(_log_derivative(W, j), variables) for j in range(W.n)]
    inverse = MPoly.monomial(tuple([1] * (W.n + 1)), variables) - 1
    relations.append(inverse)
    pres = AlgebraPresentation(
        variables,
        tuple(0 for _ in variables),
        tuple(relations),
        _polynomial_image(W.laurent_terms, variables),
        0,
        label=f"Jac({W})",
    )
    return build_quotient(pres)


def hms_check(J: QuotientAlgebra, SH: QuotientAlgebra, cf: CriticalFamily) -> HmsVerdict:
    """Compare Jac(W) with SH: dimensions, semisimplicity, and c1 eigenvalues vs critical values."""
    dims_match = J.dim == SH.dim
    semisimple = is_semisimple(J)[0] and is_semisimple(SH)[0]
    p = element_char_poly(SH, SH.presentation.c1)
    substituted = p.substitute({"t": cf.critical_value})
    annihilated = normal_form(substituted, groebner([cf.constraint])).is_zero()
    charpolys_match = element_char_poly(J, J.presentation.c1) == p
    verdict = HmsVerdict(dims_match, semisimple, annihilated, charpolys_match)
    logger.debug("HMS check: %s", verdict)
    return verdict


@lru_cache(maxsize=64)
def mirror_bundle(b: BundleModel) -> tuple[Superpotential, CriticalFamily, QuotientAlgebra]:
    W = build_superpotential(b)
    return W, verify_critical_family(W, b), jacobi_ring(W)


def _leaf_census(path: str, piece: Leaf, rings: ModelEvaluation) -> LeafCensus:
    label = piece_label(piece)
    if not isinstance(piece, BundleModel) or not piece.is_monotone:
        return LeafCensus(path, label, 0, 0, "1", True)
    min_poly = minimal_polynomial(rings.sh, rings.sh.presentation.c1)
    return LeafCensus(
        path,
        label,
        tori=1,
        local_systems_per_torus=rings.sh.dim,
        m0_min_poly=min_poly.to_str(),
        m0_distinct=is_square_free(min_poly),
    )


def brane_census(model: ModelExpr) -> BraneCensus:
    """Monotone tori with their local systems, one torus per monotone bundle piece."""
    leaves = tuple(
        _leaf_census(path, piece, piece_rings(piece)) for path, piece in iter_pieces(model)
    )
    census = BraneCensus(leaves, torus_bound(model))
    if not census.matches_torus_bound:
        logger.warning(
            "Brane census total %d differs from the torus bound %d",
            census.total_branes,
            census.torus_bound,
        )
    return census

