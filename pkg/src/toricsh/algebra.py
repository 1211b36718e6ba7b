"""Finite-dimensional graded commutative algebras over Q(q).

Quotients are built from presentations through a reduced Groebner basis;
every analysis (Fitting split, trace form, gradings, ring sums) works on the
resulting standard-monomial basis and multiplication matrices.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Literal, Optional, Sequence

from toricsh.coeffs import ZERO, RatFunc
from toricsh.exceptions import DomainError
from toricsh.polyalg.groebner import (
    GroebnerBasis,
    assemble_basis,
    from_coordinates,
    groebner,
    mult_matrix,
    normal_form,
    quotient_basis,
)
from toricsh.polyalg.linalg import (
    Matrix,
    bareiss_det,
    char_poly,
    mat_mul,
    mat_vec,
    nullspace,
    rank,
    transpose,
)
from toricsh.polyalg.polys import MPoly, Monomial, mono_degree, parse_poly

logger = logging.getLogger(__name__)

SumMode = Literal["orthogonal_direct", "unital_connected"]


@dataclass(frozen=True)
class AlgebraPresentation:
    """Generators with even degrees, relations, and the first Chern class.

    ``chern_modulus`` is the minimal Chern number N_M; 0 marks c1 = 0, in
    which case degrees are integers rather than residues.
    """

    variables: tuple[str, ...]
    degrees: tuple[int, ...]
    relations: tuple[MPoly, ...]
    c1: MPoly
    chern_modulus: int
    label: str = ""

    def __post_init__(self) -> None:
        if len(self.degrees) != len(self.variables):
            raise ValueError("one degree per generator is required")
        if any(d % 2 for d in self.degrees):
            raise ValueError(f"generator degrees must be even: {self.degrees}")
        if self.chern_modulus < 0:
            raise ValueError("chern_modulus must be non-negative")
        for r in (*self.relations, self.c1):
            if r.variables != self.variables:
                raise ValueError(
                    f"{r} is not over the generators {self.variables}"
                )


@dataclass(frozen=True)
class GradedDims:
    """Dimensions per degree residue (mod 2N) and the even-part dimension."""

    modulus: int
    by_residue: dict[int, int]
    even_dim: int


@dataclass(frozen=True)
class QuotientAlgebra:
    presentation: AlgebraPresentation
    gb: GroebnerBasis
    basis: tuple[Monomial, ...]
    mult_tables: dict[str, Matrix]
    c1_matrix: Matrix
    warnings: tuple[str, ...] = ()
    summands: tuple["QuotientAlgebra", ...] = field(default=(), compare=False)

    @property
    def variables(self) -> tuple[str, ...]:
        return self.presentation.variables

    @property
    def degrees(self) -> tuple[int, ...]:
        return self.presentation.degrees

    @property
    def chern_modulus(self) -> int:
        return self.presentation.chern_modulus

    @property
    def c1_element(self) -> MPoly:
        return normal_form(self.presentation.c1, self.gb)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero_ring(self) -> bool:
        return not self.basis

    def relations(self) -> tuple[MPoly, ...]:
        """Generators of the reduced Groebner basis of the defining ideal."""
        return self.gb.generators

    def relation_strings(self) -> list[str]:
        return self.gb.as_strings()

    def reduce(self, p: MPoly) -> MPoly:
        return normal_form(p, self.gb)

    def vector_of(self, p: MPoly) -> tuple[RatFunc, ...]:
        reduced = self.reduce(p)
        index = {m: i for i, m in enumerate(self.basis)}
        vec = [ZERO] * self.dim
        for m, c in reduced.terms.items():
            vec[index[m]] = c
        return tuple(vec)

    def element(self, vec: Sequence[RatFunc]) -> MPoly:
        return from_coordinates(vec, self.basis, self.variables)

    def matrix_of(self, p: MPoly) -> Matrix:
        """Multiplication-by-p matrix in the standard basis."""
        return mult_matrix(self.reduce(p), self.gb, self.basis)

    def unit_vector(self) -> tuple[RatFunc, ...]:
        return self.vector_of(MPoly.constant(1, self.variables))

    def poly(self, text: str) -> MPoly:
        return parse_poly(text, self.variables)


@dataclass(frozen=True)
class FittingSplit:
    nilpotent_dim: int
    localized: QuotientAlgebra
    stabilization_exponent: int


def _degree_warnings(pres: AlgebraPresentation) -> tuple[str, ...]:
    modulus = 2 * pres.chern_modulus
    warnings = []
    for r in pres.relations:
        if not r.is_homogeneous(pres.degrees, modulus):
            scope = f"mod {modulus}" if modulus else "in Z"
            warnings.append(f"relation '{r}' mixes degrees that differ {scope}")
    return tuple(warnings)


def build_quotient(
    pres: AlgebraPresentation,
    *,
    summands: tuple[QuotientAlgebra, ...] = (),
    gb: Optional[GroebnerBasis] = None,
) -> QuotientAlgebra:
    """Groebner basis, standard monomials and multiplication tables of a presentation.

    A caller that already knows the reduced Groebner basis of the relations
    passes it as ``gb`` and Buchberger is skipped.
    """
    if gb is None:
        gens = list(pres.relations) or [MPoly.zero(pres.variables)]
        gb = groebner(gens)
    basis = quotient_basis(gb)
    tables = {
        name: mult_matrix(MPoly.var(name, pres.variables), gb, basis)
        for name in pres.variables
    }
    c1_matrix = mult_matrix(normal_form(pres.c1, gb), gb, basis)
    warnings = _degree_warnings(pres)
    for w in warnings:
        logger.warning("%s%s", f"[{pres.label}] " if pres.label else "", w)
    logger.debug(
        "Built quotient %s: dim %d over %s", pres.label or "<anon>", len(basis), pres.variables
    )
    return QuotientAlgebra(pres, gb, basis, tables, c1_matrix, warnings, summands)


def zero_ring(label: str = "0") -> QuotientAlgebra:
    variables = ("x",)
    pres = AlgebraPresentation(
        variables, (2,), (MPoly.constant(1, variables),), MPoly.zero(variables), 0, label
    )
    return build_quotient(pres)


def ground_field(label: str = "K") -> QuotientAlgebra:
    """The one-dimensional algebra K, presented as K[x]/(x) with c1 = 0."""
    variables = ("x",)
    pres = AlgebraPresentation(
        variables, (2,), (MPoly.var("x", variables),), MPoly.zero(variables), 0, label
    )
    return build_quotient(pres)


def quotient_by(A: QuotientAlgebra, extra: Sequence[MPoly], label: str = "") -> QuotientAlgebra:
    """A modulo the ideal generated by additional relations."""
    pres = A.presentation
    new = AlgebraPresentation(
        pres.variables,
        pres.degrees,
        tuple(A.relations()) + tuple(extra),
        pres.c1,
        pres.chern_modulus,
        label or pres.label,
    )
    return build_quotient(new)


def _kernel_dim(mat: Matrix, size: int) -> int:
    return size - rank(mat) if size else 0


def localize_at(A: QuotientAlgebra, element: MPoly) -> FittingSplit:
    """Split off the generalized 0-eigenspace of multiplication by ``element``.

    Returns A / ker(element^d) for the first d at which the kernels
    stabilize; ``element`` is invertible in the result.
    """
    size = A.dim
    m = A.matrix_of(element)
    if size == 0:
        return FittingSplit(0, A, 1)
    d = 1
    power = m
    kernel = _kernel_dim(power, size)
    while True:
        next_power = mat_mul(power, m)
        next_kernel = _kernel_dim(next_power, size)
        if next_kernel == kernel:
            break
        d += 1
        power, kernel = next_power, next_kernel
        if d > size + 1:
            raise RuntimeError("kernel chain failed to stabilize")
    if kernel == 0:
        logger.debug("Element invertible on %s; localization is the identity", A.presentation.label)
        return FittingSplit(0, A, d)
    kernel_vectors = nullspace(power, size)
    extra = [A.element(v) for v in kernel_vectors]
    localized = quotient_by(A, extra)
    logger.debug(
        "Localized %s: nilpotent part %d, stabilization exponent %d",
        A.presentation.label,
        kernel,
        d,
    )
    return FittingSplit(kernel, localized, d)


def localize_at_c1(A: QuotientAlgebra) -> FittingSplit:
    return localize_at(A, A.presentation.c1)


def trace_form(A: QuotientAlgebra) -> Matrix:
    """Gram matrix of the trace form, entry (i, j) = trace of multiplication by b_i * b_j."""
    mats = [
        A.matrix_of(MPoly.monomial(b, A.variables)) for b in A.basis
    ]
    gram = []
    for i in range(A.dim):
        row = []
        for j in range(A.dim):
            acc = ZERO
            left, right = mats[i], transpose(mats[j])
            for r_left, r_right in zip(left, right):
                for x, y in zip(r_left, r_right):
                    if not x.is_zero() and not y.is_zero():
                        acc = acc + x * y
            row.append(acc)
        gram.append(tuple(row))
    return tuple(gram)


def is_semisimple(A: QuotientAlgebra) -> tuple[bool, RatFunc]:
    """Trace-form criterion; the witness is the Gram determinant."""
    witness = bareiss_det(trace_form(A))
    return not witness.is_zero(), witness


def idempotent_count(A: QuotientAlgebra) -> int:
    semisimple, _ = is_semisimple(A)
    if not semisimple:
        raise DomainError(
            "idempotent count undefined for a non-semisimple algebra",
            code="not_semisimple",
        )
    return A.dim


def graded_dims(A: QuotientAlgebra) -> GradedDims:
    modulus = 2 * A.chern_modulus
    by_residue: dict[int, int] = {}
    even = 0
    for b in A.basis:
        degree = mono_degree(b, A.degrees)
        key = degree % modulus if modulus else degree
        by_residue[key] = by_residue.get(key, 0) + 1
        if degree % 2 == 0:
            even += 1
    return GradedDims(modulus, dict(sorted(by_residue.items())), even)


def minimal_polynomial(A: QuotientAlgebra, element: MPoly, var: str = "t") -> MPoly:
    """Minimal polynomial of an element, found from the Krylov sequence of the unit."""
    if A.dim == 0:
        return MPoly.constant(1, (var,))
    m = A.matrix_of(element)
    krylov = [A.unit_vector()]
    while True:
        columns = tuple(tuple(v[i] for v in krylov) for i in range(A.dim))
        kernel = nullspace(columns, len(krylov))
        if kernel:
            relation = kernel[0]
            lead = relation[-1]
            return MPoly(
                (var,), {(i,): c / lead for i, c in enumerate(relation)}
            )
        krylov.append(mat_vec(m, krylov[-1]))


def element_char_poly(A: QuotientAlgebra, element: MPoly, var: str = "t") -> MPoly:
    return char_poly(A.matrix_of(element), var)


def is_square_free(p: MPoly) -> bool:
    """A univariate polynomial is square-free iff (p, p') is the unit ideal."""
    if p.nvars != 1:
        raise ValueError("square-freeness is checked for univariate polynomials")
    if p.is_constant():
        return not p.is_zero()
    derivative = MPoly(
        p.variables,
        {(m[0] - 1,): c * RatFunc.of(m[0]) for m, c in p.terms.items() if m[0] > 0},
    )
    return groebner([p, derivative]).is_unit()


def _relabel(
    A: QuotientAlgebra, counters: dict[str, int]
) -> tuple[dict[str, str], tuple[int, ...]]:
    mapping = {}
    for name, degree in zip(A.variables, A.degrees):
        prefix = "e" if degree == 0 else "x"
        counters[prefix] += 1
        mapping[name] = f"{prefix}{counters[prefix]}"
    return mapping, A.degrees


def _move(p: MPoly, mapping: dict[str, str], target: tuple[str, ...]) -> MPoly:
    renamed = p.rename([mapping[v] for v in p.variables])
    return renamed.embed(target)


def _is_linear_lead(A: QuotientAlgebra, name: str) -> bool:
    unit = tuple(1 if v == name else 0 for v in A.variables)
    return unit in A.gb.leading_monomials()


def _flatten(A: QuotientAlgebra) -> tuple[QuotientAlgebra, ...]:
    return A.summands if A.summands else (A,)


def sum_rings(A: QuotientAlgebra, B: QuotientAlgebra, mode: SumMode) -> QuotientAlgebra:
    """Direct product of rings, or the connected sum identifying the units."""
    if mode == "orthogonal_direct":
        if A.is_zero_ring():
            return B
        if B.is_zero_ring():
            return A
    elif mode == "unital_connected":
        if A.dim == 1:
            return B
        if B.dim == 1:
            return A
        for part in (A, B):
            if any(not g.constant_term().is_zero() for g in part.relations()):
                raise DomainError(
                    f"unital connected sum needs an augmented algebra; "
                    f"'{part.presentation.label}' has a relation with constant term",
                    code="not_augmented",
                )
    else:
        raise ValueError(f"Unknown sum mode: {mode}")

    counters = {"x": 0, "e": 0}
    map_a, deg_a = _relabel(A, counters)
    map_b, deg_b = _relabel(B, counters)
    names = [map_a[v] for v in A.variables] + [map_b[v] for v in B.variables]
    degrees = list(deg_a) + list(deg_b)
    if mode == "orthogonal_direct":
        counters["e"] += 1
        names.append(f"e{counters['e']}")
        degrees.append(0)
    variables = tuple(names)

    rel_a = [_move(r, map_a, variables) for r in A.relations()]
    rel_b = [_move(r, map_b, variables) for r in B.relations()]
    c1_a = _move(A.presentation.c1, map_a, variables)
    c1_b = _move(B.presentation.c1, map_b, variables)
    modulus = gcd(A.chern_modulus, B.chern_modulus)
    label = f"{A.presentation.label} + {B.presentation.label}"
    # generators standing alone as a leading monomial are zero or determined in their ring
    free_a = [
        MPoly.var(map_a[v], variables) for v in A.variables if not _is_linear_lead(A, v)
    ]
    free_b = [
        MPoly.var(map_b[v], variables) for v in B.variables if not _is_linear_lead(B, v)
    ]
    cross = [xa * xb for xa in free_a for xb in free_b]

    if mode == "orthogonal_direct":
        e = MPoly.var(variables[-1], variables)
        one_minus_e = 1 - e
        relations = [e * e - e]
        relations += [MPoly.var(map_a[v], variables) * one_minus_e for v in A.variables]
        relations += [MPoly.var(map_b[v], variables) * e for v in B.variables]
        relations += [e * r for r in rel_a]
        relations += [one_minus_e * r for r in rel_b]
        c1 = e * c1_a + one_minus_e * c1_b
        summands = _flatten(A) + _flatten(B)
        # x = x*e on the first factor, y*e = 0 on the second, constants move onto e
        reduced = [e * e - e]
        reduced += [x * e - x for x in free_a]
        reduced += [y * e for y in free_b]
        reduced += cross
        reduced += [r + e.scale(r.constant_term()) - r.constant_term() for r in rel_a]
        reduced += [r - e.scale(r.constant_term()) for r in rel_b]
    else:
        relations = rel_a + rel_b
        relations += [
            MPoly.var(map_a[va], variables) * MPoly.var(map_b[vb], variables)
            for va in A.variables
            for vb in B.variables
        ]
        c1 = c1_a + c1_b
        summands = ()
        reduced = rel_a + rel_b + cross

    pres = AlgebraPresentation(
        variables, tuple(degrees), tuple(relations), c1, modulus, label
    )
    result = build_quotient(
        pres, summands=summands, gb=assemble_basis(reduced, A.gb.order)
    )
    expected = A.dim + B.dim - (1 if mode == "unital_connected" else 0)
    if result.dim != expected:
        raise DomainError(
            f"{mode} sum has dimension {result.dim}, expected {expected}",
            code="sum_dimension",
        )
    return result


def presentation_text(A: QuotientAlgebra) -> str:
    """Human-readable ring, e.g. ``K[x]/(x^2 + 3*q^2)``; sums are joined with ``(+)``."""
    if A.is_zero_ring():
        return "0"
    if A.summands:
        return " (+) ".join(presentation_text(s) for s in A.summands)
    relations = A.relation_strings()
    gens = ", ".join(A.variables)
    if not relations:
        return f"K[{gens}]"
    if A.dim == 1 and len(A.variables) == 1 and relations == [A.variables[0]]:
        return "K"
    return f"K[{gens}]/({', '.join(relations)})"
