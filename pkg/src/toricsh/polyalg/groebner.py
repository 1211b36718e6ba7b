"""Buchberger's algorithm, normal forms and finite quotient bases over Q(q)."""

from __future__ import annotations

import heapq
import itertools
import logging
from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from toricsh.coeffs import ONE, ZERO, RatFunc
from toricsh.exceptions import DomainError, InfiniteQuotientError
from toricsh.polyalg.linalg import Matrix, Vector
from toricsh.polyalg.polys import (
    MPoly,
    Monomial,
    MonomialOrder,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    order_key,
)

logger = logging.getLogger(__name__)

Terms = dict[Monomial, RatFunc]


@dataclass(frozen=True)
class GroebnerBasis:
    """Reduced Groebner basis: monic generators, sorted by leading monomial."""

    generators: tuple[MPoly, ...]
    order: MonomialOrder
    variables: tuple[str, ...]

    def leading_monomials(self) -> list[Monomial]:
        return [g.leading_monomial(self.order) for g in self.generators]

    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.generators)

    def as_strings(self) -> list[str]:
        return [g.to_str(self.order) for g in self.generators]


def _leading(terms: Terms, order: MonomialOrder) -> Monomial:
    return max(terms, key=order_key(order))


def _reduce_terms(
    terms: Terms,
    divisors: Sequence[tuple[Monomial, Terms]],
    order: MonomialOrder,
) -> Terms:
    """Fully reduce ``terms`` by monic divisors given as (leading monomial, terms)."""
    key = order_key(order)
    work = dict(terms)
    remainder: Terms = {}
    while work:
        m = max(work, key=key)
        c = work.pop(m)
        for lm, g in divisors:
            if not mono_divides(lm, m):
                continue
            shift = mono_div(m, lm)
            for gm, gc in g.items():
                if gm == lm:
                    continue
                t = mono_mul(gm, shift)
                value = work.get(t, ZERO) - c * gc
                if value.is_zero():
                    work.pop(t, None)
                else:
                    work[t] = value
            break
        else:
            remainder[m] = c
    return remainder


def _monic_terms(terms: Terms, order: MonomialOrder) -> Terms:
    lc = terms[_leading(terms, order)]
    if lc.is_one():
        return terms
    inv = lc.inverse()
    return {m: c * inv for m, c in terms.items()}


def _s_poly(f: Terms, lf: Monomial, g: Terms, lg: Monomial) -> Terms:
    lcm = mono_lcm(lf, lg)
    sf = mono_div(lcm, lf)
    sg = mono_div(lcm, lg)
    out: Terms = {}
    for m, c in f.items():
        out[mono_mul(m, sf)] = c
    for m, c in g.items():
        t = mono_mul(m, sg)
        value = out.get(t, ZERO) - c
        if value.is_zero():
            out.pop(t, None)
        else:
            out[t] = value
    return out


def groebner(
    ideal_gens: Sequence[MPoly],
    order: MonomialOrder = "degrevlex",
    *,
    max_pairs: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``ideal_gens``.

    Pairs are selected by the normal strategy (smallest lcm of leading
    monomials first) and pruned with the product and chain criteria.
    The unit ideal yields the basis {1}.
    """
    if not ideal_gens:
        raise ValueError("groebner() needs at least one generator to fix the variables")
    variables = ideal_gens[0].variables
    for g in ideal_gens:
        if g.variables != variables:
            raise ValueError(
                f"Generators over different variables: {g.variables} vs {variables}"
            )
    key = order_key(order)
    unit = GroebnerBasis((MPoly.constant(1, variables),), order, variables)

    basis: list[Terms] = []
    leads: list[Monomial] = []
    for g in ideal_gens:
        if g.is_zero():
            continue
        terms = _reduce_terms(dict(g.terms), list(zip(leads, basis)), order)
        if not terms:
            continue
        terms = _monic_terms(terms, order)
        lm = _leading(terms, order)
        if sum(lm) == 0:
            return unit
        basis.append(terms)
        leads.append(lm)

    if not basis:
        return GroebnerBasis((), order, variables)

    pairs: set[tuple[int, int]] = set()
    queue: list[tuple[object, tuple[int, int]]] = []

    def push(i: int, j: int) -> None:
        pairs.add((i, j))
        heapq.heappush(queue, (key(mono_lcm(leads[i], leads[j])), (i, j)))

    for i, j in itertools.combinations(range(len(basis)), 2):
        push(i, j)
    processed = 0
    while queue:
        _, (i, j) = heapq.heappop(queue)
        pairs.discard((i, j))
        lcm = mono_lcm(leads[i], leads[j])
        if lcm == mono_mul(leads[i], leads[j]):
            continue
        if any(
            k != i
            and k != j
            and mono_divides(leads[k], lcm)
            and (min(i, k), max(i, k)) not in pairs
            and (min(j, k), max(j, k)) not in pairs
            for k in range(len(basis))
        ):
            continue
        processed += 1
        if max_pairs is not None and processed > max_pairs:
            raise DomainError(
                f"Groebner computation exceeded {max_pairs} S-pair reductions",
                code="groebner_limit",
            )
        s = _s_poly(basis[i], leads[i], basis[j], leads[j])
        r = _reduce_terms(s, list(zip(leads, basis)), order)
        if not r:
            continue
        r = _monic_terms(r, order)
        lm = _leading(r, order)
        if sum(lm) == 0:
            logger.debug("Unit ideal detected after %d S-pairs", processed)
            return unit
        new_index = len(basis)
        basis.append(r)
        leads.append(lm)
        for k in range(new_index):
            push(k, new_index)

    logger.debug("Buchberger finished: %d S-pairs reduced, %d generators", processed, len(basis))

    # minimal basis: drop generators whose leading monomial is divisible by another's
    keep: list[int] = []
    for idx, lm in enumerate(leads):
        redundant = False
        for other, olm in enumerate(leads):
            if other == idx or not mono_divides(olm, lm):
                continue
            if olm != lm or other < idx:
                redundant = True
                break
        if not redundant:
            keep.append(idx)

    reduced: list[MPoly] = []
    for idx in keep:
        others = [(leads[k], basis[k]) for k in keep if k != idx]
        lm = leads[idx]
        tail = {m: c for m, c in basis[idx].items() if m != lm}
        tail = _reduce_terms(tail, others, order)
        tail[lm] = ONE
        reduced.append(MPoly(variables, tail))
    reduced.sort(key=lambda p: key(p.leading_monomial(order)))
    return GroebnerBasis(tuple(reduced), order, variables)


def normal_form(p: MPoly, gb: GroebnerBasis) -> MPoly:
    """Remainder of ``p`` on division by ``gb``; no term is divisible by a leading monomial."""
    if p.variables != gb.variables:
        raise ValueError(f"Polynomial over {p.variables}, basis over {gb.variables}")
    divisors = [(g.leading_monomial(gb.order), dict(g.terms)) for g in gb.generators]
    return MPoly(p.variables, _reduce_terms(dict(p.terms), divisors, gb.order))


def ideal_contains(gb: GroebnerBasis, p: MPoly) -> bool:
    return normal_form(p, gb).is_zero()


def ideals_equal(first: Sequence[MPoly], second: Sequence[MPoly]) -> bool:
    """Decide equality of two ideals by mutual normal-form reduction."""
    gb1 = groebner(first)
    gb2 = groebner(second)
    return all(ideal_contains(gb2, g) for g in first) and all(
        ideal_contains(gb1, g) for g in second
    )


def quotient_basis(gb: GroebnerBasis) -> tuple[Monomial, ...]:
    """Standard monomials of the quotient, ascending in the basis order."""
    nvars = len(gb.variables)
    if gb.is_unit():
        return ()
    leads = gb.leading_monomials()
    for i in range(nvars):
        if not any(
            lm[i] > 0 and all(e == 0 for k, e in enumerate(lm) if k != i) for lm in leads
        ):
            raise InfiniteQuotientError(
                f"quotient not finite-dimensional: no pure power of {gb.variables[i]} "
                "among the leading monomials"
            )
    # standard monomials are closed under division, so they are reachable from 1
    start = (0,) * nvars
    seen = {start}
    frontier = deque([start])
    while frontier:
        m = frontier.popleft()
        for i in range(nvars):
            step = m[:i] + (m[i] + 1,) + m[i + 1 :]
            if step in seen or any(mono_divides(lm, step) for lm in leads):
                continue
            seen.add(step)
            frontier.append(step)
    return tuple(sorted(seen, key=order_key(gb.order)))


def assemble_basis(
    generators: Sequence[MPoly], order: MonomialOrder = "degrevlex"
) -> GroebnerBasis:
    """Wrap generators already known to form a reduced Groebner basis, in canonical order."""
    if not generators:
        raise ValueError("assemble_basis() needs at least one generator to fix the variables")
    key = order_key(order)
    ordered = sorted(generators, key=lambda g: key(g.leading_monomial(order)))
    return GroebnerBasis(tuple(ordered), order, generators[0].variables)


def coordinates(p: MPoly, basis: Sequence[Monomial]) -> Vector:
    """Coefficient vector of an already reduced polynomial in the standard basis."""
    index = {m: i for i, m in enumerate(basis)}
    vec = [ZERO] * len(basis)
    for m, c in p.terms.items():
        if m not in index:
            raise ValueError(f"monomial {m} is not a standard monomial")
        vec[index[m]] = c
    return tuple(vec)


def from_coordinates(
    vec: Sequence[RatFunc], basis: Sequence[Monomial], variables: Sequence[str]
) -> MPoly:
    return MPoly(tuple(variables), {m: c for m, c in zip(basis, vec)})


def mult_matrix(
    e: MPoly, gb: GroebnerBasis, basis: Optional[Sequence[Monomial]] = None
) -> Matrix:
    """Matrix of multiplication by ``e``; column j is the normal form of e * basis[j]."""
    if basis is None:
        basis = quotient_basis(gb)
    columns = []
    for b in basis:
        product = e.shift(b, ONE)
        columns.append(coordinates(normal_form(product, gb), basis))
    return tuple(tuple(col[i] for col in columns) for i in range(len(basis)))
