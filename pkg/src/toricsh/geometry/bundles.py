"""Split negative bundles O(-m)^n1 -> CP^n2: fans and quantum cohomology."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from toricsh.algebra import AlgebraPresentation, QuotientAlgebra, build_quotient
from toricsh.coeffs import RatFunc
from toricsh.exceptions import DomainError
from toricsh.polyalg.linalg import nullspace, to_matrix
from toricsh.polyalg.polys import MPoly

logger = logging.getLogger(__name__)

LatticeVector = tuple[int, ...]


@dataclass(frozen=True)
class BundleModel:
    """The total space of O(-m)^{n1} over CP^{n2}; complex dimension n = n1 + n2."""

    m: int
    n1: int
    n2: int

    def __post_init__(self) -> None:
        for name in ("m", "n1", "n2"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise DomainError(
                    f"{name} must be a positive integer, got {value!r}",
                    code="invalid_parameter",
                )
        if self.m * self.n1 > self.n2 + 1:
            raise DomainError(
                f"O(-{self.m})^{self.n1} -> P^{self.n2} is not semi-positive in the "
                f"implemented family (m*n1 = {self.m * self.n1} > n2+1 = {self.n2 + 1})",
                code="not_semi_positive",
            )

    @property
    def n(self) -> int:
        return self.n1 + self.n2

    @property
    def q_exponent(self) -> int:
        """n2 + 1 - m*n1, which is also the minimal Chern number."""
        return self.n2 + 1 - self.m * self.n1

    @property
    def chern_modulus(self) -> int:
        return self.q_exponent

    @property
    def is_calabi_yau(self) -> bool:
        return self.q_exponent == 0

    @property
    def is_monotone(self) -> bool:
        return self.q_exponent >= 1

    @property
    def qh_constant(self) -> int:
        """(-m)^{m n1} (n2+1)^{m n1}."""
        power = self.m * self.n1
        return (-self.m) ** power * (self.n2 + 1) ** power

    def describe(self) -> str:
        twist = f"O(-{self.m})" + (f"^{self.n1}" if self.n1 > 1 else "")
        return f"{twist} -> P^{self.n2}"


@dataclass(frozen=True)
class FanData:
    """Rays of the fan: base directions e_i then fiber directions f_j."""

    base_rays: tuple[LatticeVector, ...]
    fiber_rays: tuple[LatticeVector, ...]
    relation_weight: int
    q_exponent: int
    fiber_multiplicity: int

    @property
    def rays(self) -> tuple[LatticeVector, ...]:
        return self.base_rays + self.fiber_rays

    def primitive_relation_holds(self) -> bool:
        """Check sum(e_i) == weight * sum(f_j) coordinate-wise."""
        dim = len(self.rays[0])
        base_sum = [sum(r[k] for r in self.base_rays) for k in range(dim)]
        fiber_sum = [sum(r[k] for r in self.fiber_rays) for k in range(dim)]
        return base_sum == [self.relation_weight * v for v in fiber_sum]


def _is_primitive(v: LatticeVector) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def build_fan(b: BundleModel) -> FanData:
    """Fan of the bundle in Z^{n2} x Z^{n1}.

    e_i = (b_i, m, ..., m) with b_i the rays of CP^{n2}, f_j = (0, eps_j).
    The rays satisfy sum(e_i) = m(n2+1) * sum(f_j).
    """
    dim = b.n2 + b.n1
    base = []
    for i in range(b.n2 + 1):
        head = [0] * b.n2
        if i < b.n2:
            head[i] = 1
        else:
            head = [-1] * b.n2
        base.append(tuple(head + [b.m] * b.n1))
    fiber = []
    for j in range(b.n1):
        tail = [0] * b.n1
        tail[j] = 1
        fiber.append(tuple([0] * b.n2 + tail))
    fan = FanData(
        tuple(base), tuple(fiber), b.m * (b.n2 + 1), b.q_exponent, b.m
    )
    if len(fan.rays) != b.n2 + 1 + b.n1 or any(len(r) != dim for r in fan.rays):
        raise RuntimeError(f"malformed fan for {b.describe()}")
    if not all(_is_primitive(r) for r in fan.rays):
        raise RuntimeError(f"non-primitive ray in the fan of {b.describe()}")
    if not fan.primitive_relation_holds():
        raise RuntimeError(f"primitive relation fails for {b.describe()}")
    return fan


def _divisor_names(b: BundleModel) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(b.n2 + 1)) + tuple(
        f"y{j + 1}" for j in range(b.n1)
    )


def linear_relations(fan: FanData, variables: tuple[str, ...]) -> list[MPoly]:
    """One relation sum_rho <u_k, rho> D_rho per lattice coordinate k."""
    dim = len(fan.rays[0])
    relations = []
    for k in range(dim):
        terms = {}
        for idx, ray in enumerate(fan.rays):
            if ray[k]:
                mono = tuple(1 if t == idx else 0 for t in range(len(variables)))
                terms[mono] = RatFunc.of(ray[k])
        relations.append(MPoly(variables, terms))
    return relations


def build_bundle_qh(b: BundleModel) -> AlgebraPresentation:
    """K[x]/(x^{n2+1} - q^{n2+1-mn1} (-m)^{mn1} (n2+1)^{mn1} x^{mn1}), c1 = (n2+1-mn1) x."""
    variables = ("x",)
    x = MPoly.var("x", variables)
    correction = RatFunc.q(b.q_exponent, b.qh_constant)
    relation = x ** (b.n2 + 1) - (x ** (b.m * b.n1)).scale(correction)
    return AlgebraPresentation(
        variables,
        (2,),
        (relation,),
        x * b.q_exponent,
        b.chern_modulus,
        label=b.describe(),
    )


def derive_qh_from_fan(b: BundleModel) -> AlgebraPresentation:
    """Quantum cohomology read off the fan.

    The linear relations express every toric divisor as a multiple of the
    last base divisor x; substituting into the quantum Stanley-Reisner
    relation prod(x_i) = q^{n2+1-mn1} prod(y_j^m) leaves one relation in x.
    """
    fan = build_fan(b)
    names = _divisor_names(b)
    relations = linear_relations(fan, names)
    units = [tuple(1 if t == i else 0 for t in range(len(names))) for i in range(len(names))]
    rows = [[r.coefficient(u) for u in units] for r in relations]
    kernel = nullspace(to_matrix(rows), len(names))
    if len(kernel) != 1:
        raise RuntimeError(
            f"linear relations of {b.describe()} leave {len(kernel)} free divisors, expected 1"
        )
    direction = kernel[0]
    scale = direction[b.n2].inverse()
    multiples = [c * scale for c in direction]
    logger.debug(
        "Fan divisors of %s in terms of x: %s",
        b.describe(),
        ", ".join(f"{n}={c}*x" for n, c in zip(names, multiples)),
    )

    variables = ("x",)
    x = MPoly.var("x", variables)
    images = {name: x * c for name, c in zip(names, multiples)}
    ring = names
    sr_base = MPoly.constant(1, ring)
    for name in names[: b.n2 + 1]:
        sr_base = sr_base * MPoly.var(name, ring)
    sr_fiber = MPoly.constant(1, ring)
    for name in names[b.n2 + 1 :]:
        sr_fiber = sr_fiber * MPoly.var(name, ring) ** fan.fiber_multiplicity
    sr = sr_base - sr_fiber.scale(RatFunc.q(fan.q_exponent))
    relation = sr.substitute(images)
    return AlgebraPresentation(
        variables,
        (2,),
        (relation,),
        x * b.q_exponent,
        b.chern_modulus,
        label=f"{b.describe()} (fan)",
    )


@lru_cache(maxsize=128)
def bundle_qh(b: BundleModel) -> QuotientAlgebra:
    """Quotient algebra of the closed-form presentation; cached per model."""
    return build_quotient(build_bundle_qh(b))
