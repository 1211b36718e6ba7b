"""Sparse multivariate polynomials over Q(q) and monomial orders."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Callable, Iterator, Literal, Mapping, Optional, Sequence, Union

from toricsh.coeffs import ONE, ZERO, RatFunc, Scalar

logger = logging.getLogger(__name__)

Monomial = tuple[int, ...]
MonomialOrder = Literal["degrevlex", "lex"]
Coefficient = Union[RatFunc, Scalar]


def grevlex_key(m: Monomial) -> tuple[int, tuple[int, ...]]:
    """Sort key: larger key means larger monomial in graded reverse lex order."""
    return sum(m), tuple(reversed([-e for e in m]))


def lex_key(m: Monomial) -> tuple[int, ...]:
    return m


def order_key(order: MonomialOrder) -> Callable[[Monomial], object]:
    if order == "degrevlex":
        return grevlex_key
    if order == "lex":
        return lex_key
    raise ValueError(f"Unknown monomial order: {order}")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True when a divides b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(m: Monomial, weights: Optional[Sequence[int]] = None) -> int:
    if weights is None:
        return sum(m)
    return sum(e * w for e, w in zip(m, weights))


def _as_coeff(value: Coefficient) -> RatFunc:
    return value if isinstance(value, RatFunc) else RatFunc.of(value)


def format_monomial(m: Monomial, variables: Sequence[str]) -> str:
    factors = []
    for name, e in zip(variables, m):
        if e == 1:
            factors.append(name)
        elif e > 1:
            factors.append(f"{name}^{e}")
    return "*".join(factors)


@dataclass(frozen=True)
class MPoly:
    """Polynomial over Q(q) in the named variables; zero coefficients are never stored."""

    variables: tuple[str, ...]
    terms: Mapping[Monomial, RatFunc] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"Variable names must be distinct: {self.variables}")
        cleaned = {}
        for m, c in self.terms.items():
            if len(m) != len(self.variables):
                raise ValueError(
                    f"Monomial {m} does not match variables {self.variables}"
                )
            if not c.is_zero():
                cleaned[tuple(m)] = c
        object.__setattr__(self, "terms", cleaned)

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MPoly":
        return cls(tuple(variables), {})

    @classmethod
    def constant(cls, value: Coefficient, variables: Sequence[str]) -> "MPoly":
        return cls(tuple(variables), {(0,) * len(variables): _as_coeff(value)})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MPoly":
        names = tuple(variables)
        exps = tuple(1 if v == name else 0 for v in names)
        if sum(exps) != 1:
            raise ValueError(f"Unknown variable {name!r} in {names}")
        return cls(names, {exps: ONE})

    @classmethod
    def monomial(
        cls, m: Monomial, variables: Sequence[str], coeff: Coefficient = 1
    ) -> "MPoly":
        return cls(tuple(variables), {tuple(m): _as_coeff(coeff)})

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self.terms)

    def constant_term(self) -> RatFunc:
        return self.terms.get((0,) * self.nvars, ZERO)

    def coefficient(self, m: Monomial) -> RatFunc:
        return self.terms.get(tuple(m), ZERO)

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self, order: MonomialOrder = "degrevlex") -> list[tuple[Monomial, RatFunc]]:
        """Terms from largest to smallest monomial."""
        key = order_key(order)
        return sorted(self.terms.items(), key=lambda item: key(item[0]), reverse=True)

    def leading_monomial(self, order: MonomialOrder = "degrevlex") -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=order_key(order))

    def leading_coefficient(self, order: MonomialOrder = "degrevlex") -> RatFunc:
        return self.terms[self.leading_monomial(order)]

    def _check(self, other: "MPoly") -> None:
        if self.variables != other.variables:
            raise ValueError(
                f"Polynomials over different variables: {self.variables} vs {other.variables}"
            )

    def _lift(self, other: Union["MPoly", Coefficient]) -> "MPoly":
        if isinstance(other, MPoly):
            self._check(other)
            return other
        return MPoly.constant(other, self.variables)

    def __add__(self, other: Union["MPoly", Coefficient]) -> "MPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out[m] + c if m in out else c
        return MPoly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Union["MPoly", Coefficient]) -> "MPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other: Coefficient) -> "MPoly":
        return self._lift(other) - self

    def __mul__(self, other: Union["MPoly", Coefficient]) -> "MPoly":
        if not isinstance(other, MPoly):
            return self.scale(_as_coeff(other))
        self._check(other)
        out: dict[Monomial, RatFunc] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                prod = c1 * c2
                out[m] = out[m] + prod if m in out else prod
        return MPoly(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "MPoly":
        if exponent < 0:
            raise ValueError("negative powers of polynomials are not defined")
        result = MPoly.constant(1, self.variables)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, c: RatFunc) -> "MPoly":
        if c.is_zero():
            return MPoly.zero(self.variables)
        return MPoly(self.variables, {m: v * c for m, v in self.terms.items()})

    def shift(self, m: Monomial, c: RatFunc) -> "MPoly":
        """Return c * x^m * self."""
        return MPoly(
            self.variables, {mono_mul(k, m): v * c for k, v in self.terms.items()}
        )

    def monic(self, order: MonomialOrder = "degrevlex") -> "MPoly":
        if self.is_zero():
            return self
        return self.scale(self.leading_coefficient(order).inverse())

    def rename(self, variables: Sequence[str]) -> "MPoly":
        """Same polynomial under new names for the same variable slots."""
        return MPoly(tuple(variables), dict(self.terms))

    def embed(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over a variable list that contains every current variable."""
        target = tuple(variables)
        try:
            slots = [target.index(v) for v in self.variables]
        except ValueError as exc:
            raise ValueError(f"{self.variables} not contained in {target}") from exc
        out = {}
        for m, c in self.terms.items():
            new = [0] * len(target)
            for slot, e in zip(slots, m):
                new[slot] = e
            out[tuple(new)] = c
        return MPoly(target, out)

    def substitute(self, values: Mapping[str, "MPoly"]) -> "MPoly":
        """Replace variables by polynomials over a common target ring."""
        targets = list(values.values())
        if not targets:
            return self
        ring = targets[0].variables
        result = MPoly.zero(ring)
        images = []
        for name in self.variables:
            if name in values:
                images.append(values[name])
            else:
                images.append(MPoly.var(name, ring))
        for m, c in self.terms.items():
            term = MPoly.constant(c, ring)
            for image, e in zip(images, m):
                if e:
                    term = term * image**e
            result = result + term
        return result

    def evaluate_coefficients(self, fn: Callable[[RatFunc], RatFunc]) -> "MPoly":
        return MPoly(self.variables, {m: fn(c) for m, c in self.terms.items()})

    def is_homogeneous(self, weights: Sequence[int], modulus: int = 0) -> bool:
        """Check all terms share one weighted degree (mod ``modulus`` when positive)."""
        degrees = {mono_degree(m, weights) for m in self.terms}
        if modulus > 0:
            degrees = {d % modulus for d in degrees}
        return len(degrees) <= 1

    def iter_terms(self) -> Iterator[tuple[Monomial, RatFunc]]:
        return iter(self.terms.items())

    def to_str(self, order: MonomialOrder = "degrevlex") -> str:
        if self.is_zero():
            return "0"
        pieces: list[tuple[str, str]] = []
        for m, c in self.sorted_terms(order):
            mono = format_monomial(m, self.variables)
            negative = c.is_monomial() and c.num.leading < 0
            magnitude = -c if negative else c
            coeff_text = str(magnitude)
            if not (magnitude.is_monomial() or magnitude.is_constant()):
                coeff_text = f"({coeff_text})"
            if not mono:
                body = coeff_text
            elif magnitude.is_one():
                body = mono
            else:
                body = f"{coeff_text}*{mono}"
            pieces.append(("-" if negative else "+", body))
        first_sign, first_body = pieces[0]
        text = first_body if first_sign == "+" else f"-{first_body}"
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.to_str()

    def __repr__(self) -> str:
        return f"MPoly({self.to_str()!r}, vars={self.variables})"


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _PolyParser:
    """Recursive-descent reader for the canonical polynomial text form."""

    def __init__(self, text: str, variables: Sequence[str]) -> None:
        self.variables = tuple(variables)
        self.tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if match is None:
                break
            number, name, symbol = match.groups()
            if number is not None:
                self.tokens.append(("int", number))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                self.tokens.append(("sym", symbol))
            pos = match.end()
        self.index = 0

    def peek(self) -> Optional[tuple[str, str]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def take(self) -> tuple[str, str]:
        token = self.peek()
        if token is None:
            raise ValueError("unexpected end of polynomial text")
        self.index += 1
        return token

    def expect(self, symbol: str) -> None:
        token = self.take()
        if token != ("sym", symbol):
            raise ValueError(f"expected {symbol!r}, got {token[1]!r}")

    def parse(self) -> MPoly:
        result = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected token {self.peek()[1]!r}")  # type: ignore[index]
        return result

    def expr(self) -> MPoly:
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        result = self.term() * sign
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term(self) -> MPoly:
        result = self.power()
        while self.peek() in (("sym", "*"), ("sym", "/")):
            op = self.take()[1]
            rhs = self.power()
            if op == "*":
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ValueError("division only by nonzero constants of Q(q)")
                result = result.scale(rhs.constant_term().inverse())
        return result

    def power(self) -> MPoly:
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            negative = False
            if self.peek() == ("sym", "-"):
                self.take()
                negative = True
            kind, value = self.take()
            if kind != "int":
                raise ValueError(f"exponent must be an integer, got {value!r}")
            exponent = int(value)
            if negative:
                if not base.is_constant():
                    raise ValueError("negative exponents only on constants of Q(q)")
                return MPoly.constant(base.constant_term() ** (-exponent), self.variables)
            return base**exponent
        return base

    def atom(self) -> MPoly:
        kind, value = self.take()
        if kind == "int":
            return MPoly.constant(int(value), self.variables)
        if kind == "name":
            if value == "q":
                return MPoly.constant(RatFunc.q(), self.variables)
            return MPoly.var(value, self.variables)
        if value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if value == "-":
            return -self.power()
        raise ValueError(f"unexpected symbol {value!r}")


def parse_poly(text: str, variables: Sequence[str]) -> MPoly:
    """Read a polynomial written with ``+ - * / ^`` and parentheses; ``q`` is the field parameter."""
    return _PolyParser(text, variables).parse()
