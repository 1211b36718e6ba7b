"""Exact arithmetic in Q and in the rational-function field Q(q).

``Q(q)`` stands in for the Novikov field: every ring presentation handled by
the toolkit uses integer powers of ``q`` with rational coefficients.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Literal, Sequence, Union

from toricsh.exceptions import FieldDivisionError, PoleError

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction]


def _strip(coeffs: Iterable[Scalar]) -> tuple[Fraction, ...]:
    values = [Fraction(c) for c in coeffs]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _format_scalar(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class QPoly:
    """Polynomial in q over Q, coefficients indexed by exponent."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _strip(self.coeffs))

    @classmethod
    def constant(cls, value: Scalar) -> "QPoly":
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, exponent: int, value: Scalar = 1) -> "QPoly":
        return cls((Fraction(0),) * exponent + (Fraction(value),))

    @property
    def degree(self) -> int:
        """Degree in q; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def term_count(self) -> int:
        return sum(1 for c in self.coeffs if c != 0)

    def __add__(self, other: "QPoly") -> "QPoly":
        size = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (size - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (size - len(other.coeffs))
        return QPoly(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "QPoly":
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "QPoly") -> "QPoly":
        return self + (-other)

    def __mul__(self, other: "QPoly") -> "QPoly":
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return QPoly(tuple(out))

    def scale(self, value: Scalar) -> "QPoly":
        return QPoly(tuple(c * value for c in self.coeffs))

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Euclidean division over Q."""
        if other.is_zero():
            raise FieldDivisionError()
        remainder = list(self.coeffs)
        quotient = [Fraction(0)] * max(len(remainder) - len(other.coeffs) + 1, 0)
        lead = other.leading
        shift = other.degree
        for k in range(len(remainder) - 1, shift - 1, -1):
            factor = remainder[k] / lead
            if factor == 0:
                continue
            quotient[k - shift] = factor
            for i, c in enumerate(other.coeffs):
                remainder[k - shift + i] -= factor * c
        return QPoly(tuple(quotient)), QPoly(tuple(remainder))

    def monic(self) -> "QPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.leading)

    def evaluate(self, q0: Scalar) -> Fraction:
        value = Fraction(0)
        for c in reversed(self.coeffs):
            value = value * q0 + c
        return value

    def derivative(self) -> "QPoly":
        return QPoly(tuple(c * k for k, c in enumerate(self.coeffs))[1:])

    def content_and_primitive(self) -> tuple[Fraction, "QPoly"]:
        """Split into a positive rational content and a primitive integer polynomial."""
        if self.is_zero():
            return Fraction(1), self
        denom = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * denom) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return Fraction(g, denom), QPoly(tuple(Fraction(v, g) for v in ints))

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: list[str] = []
        for exponent in range(self.degree, -1, -1):
            c = self.coeffs[exponent]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if exponent == 0:
                body = _format_scalar(magnitude)
            else:
                power = "q" if exponent == 1 else f"q^{exponent}"
                body = power if magnitude == 1 else f"{_format_scalar(magnitude)}*{power}"
            if not parts:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f"{sign}{body}")
        return "".join(parts)


def poly_gcd(a: QPoly, b: QPoly) -> QPoly:
    """Monic gcd of two polynomials (Euclid over Q)."""
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r
    return a.monic()


def _is_atom(text: str) -> bool:
    body = text[1:] if text.startswith("-") else text
    return body.isdigit() or body == "q" or (
        body.startswith("q^") and body[2:].isdigit()
    )


@dataclass(frozen=True)
class RatFunc:
    """Element of Q(q), stored reduced with a monic denominator.

    Build instances through :func:`normalize` or the helpers below; the
    dataclass constructor trusts its arguments.
    """

    num: QPoly
    den: QPoly

    @classmethod
    def of(cls, value: Scalar) -> "RatFunc":
        return cls(QPoly.constant(value), QPoly.constant(1))

    @classmethod
    def from_poly(cls, poly: QPoly) -> "RatFunc":
        return cls(poly, QPoly.constant(1))

    @classmethod
    def q(cls, exponent: int = 1, value: Scalar = 1) -> "RatFunc":
        """The element value * q**exponent (negative exponents allowed)."""
        if exponent >= 0:
            return cls(QPoly.monomial(exponent, value), QPoly.constant(1))
        return normalize(QPoly.constant(value), QPoly.monomial(-exponent))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.degree <= 0

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num.leading

    def is_monomial(self) -> bool:
        """True for c*q^k with c in Q, k >= 0."""
        return self.den.is_one() and self.num.term_count() == 1

    def __add__(self, other: "RatFunc") -> "RatFunc":
        return field_arith(self, other, "add")

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return field_arith(self, other, "sub")

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        return field_arith(self, other, "mul")

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return field_arith(self, other, "div")

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __pow__(self, exponent: int) -> "RatFunc":
        if exponent < 0:
            return RatFunc.of(1) / (self ** (-exponent))
        result = RatFunc.of(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "RatFunc":
        return RatFunc.of(1) / self

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        num_content, num_prim = self.num.content_and_primitive()
        den_content, den_prim = self.den.content_and_primitive()
        ratio = num_content / den_content
        num_poly = num_prim.scale(ratio.numerator)
        den_poly = den_prim.scale(ratio.denominator)
        num_text = str(num_poly)
        den_text = str(den_poly)
        if not _is_atom(num_text):
            num_text = f"({num_text})"
        if not _is_atom(den_text):
            den_text = f"({den_text})"
        return f"{num_text}/{den_text}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


ZERO = RatFunc.of(0)
ONE = RatFunc.of(1)


def normalize(num: QPoly, den: QPoly) -> RatFunc:
    """Reduce num/den to lowest terms with a monic denominator."""
    if den.is_zero():
        raise FieldDivisionError()
    if num.is_zero():
        return RatFunc(QPoly(), QPoly.constant(1))
    if den.degree == 0:
        return RatFunc(num.scale(1 / den.leading), QPoly.constant(1))
    g = poly_gcd(num, den)
    if not g.is_one():
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
    lead = den.leading
    return RatFunc(num.scale(1 / lead), den.scale(1 / lead))


def field_arith(a: RatFunc, b: RatFunc, op: Literal["add", "sub", "mul", "div"]) -> RatFunc:
    """Exact field arithmetic in Q(q); the result is normalized."""
    if op == "add" or op == "sub":
        other_num = b.num if op == "add" else -b.num
        if a.den == b.den:
            if a.den.is_one():
                return RatFunc(a.num + other_num, a.den)
            return normalize(a.num + other_num, a.den)
        return normalize(a.num * b.den + other_num * a.den, a.den * b.den)
    if op == "mul":
        if a.is_zero() or b.is_zero():
            return ZERO
        if a.den.is_one() and b.den.is_one():
            return RatFunc(a.num * b.num, a.den)
        return normalize(a.num * b.num, a.den * b.den)
    if op == "div":
        if b.is_zero():
            raise FieldDivisionError()
        return normalize(a.num * b.den, a.den * b.num)
    raise ValueError(f"Unknown field operation: {op}")


def evaluate_at(f: RatFunc, q0: Scalar) -> Fraction:
    """Exact value of f at q = q0."""
    denominator = f.den.evaluate(q0)
    if denominator == 0:
        raise PoleError(f"pole of {f} at q = {q0}")
    return f.num.evaluate(q0) / denominator


def poly_from_coeffs(coeffs: Sequence[Scalar]) -> RatFunc:
    """Polynomial in q from low-to-high coefficients."""
    return RatFunc.from_poly(QPoly(tuple(Fraction(c) for c in coeffs)))
