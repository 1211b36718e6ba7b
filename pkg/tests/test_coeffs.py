"""Tests for exact arithmetic in Q(q)."""

import random
from fractions import Fraction

import pytest

from toricsh.coeffs import (
    ONE,
    ZERO,
    QPoly,
    RatFunc,
    evaluate_at,
    field_arith,
    normalize,
    poly_from_coeffs,
    poly_gcd,
)
from toricsh.exceptions import DomainError, FieldDivisionError, PoleError


def _random_element(rng: random.Random) -> RatFunc:
    num = poly_from_coeffs([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))])
    den = poly_from_coeffs([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))])
    if den.is_zero():
        return num
    return num / den


def test_qpoly_strips_trailing_zeros():
    """Trailing zero coefficients do not change the degree."""
    p = QPoly((Fraction(1), Fraction(2), Fraction(0), Fraction(0)))
    assert p.degree == 1
    assert QPoly().degree == -1


def test_qpoly_str():
    assert str(QPoly((3, 0, 1))) == "q^2+3"
    assert str(QPoly((0, 2))) == "2*q"
    assert str(QPoly((0, Fraction(1, 2)))) == "1/2*q"
    assert str(QPoly((0, -1, 1))) == "q^2-q"


def test_poly_gcd_is_monic():
    a = QPoly((0, 2, 2))  # 2q^2 + 2q
    b = QPoly((0, 0, 3))  # 3q^2
    assert poly_gcd(a, b) == QPoly((0, 1))


def test_ratfunc_normal_form_is_unique():
    """Equal elements built differently compare equal."""
    a = RatFunc.from_poly(QPoly((0, 2))) / RatFunc.from_poly(QPoly((0, 0, 4)))
    b = RatFunc.of(1) / RatFunc.q(1, 2)
    assert a == b
    assert a.den.leading == 1


def test_ratfunc_str_clears_denominators():
    f = RatFunc.from_poly(QPoly((3, 0, 1))) / RatFunc.q(1, 2)
    assert str(f) == "(q^2+3)/(2*q)"
    g = ONE / RatFunc.from_poly(QPoly((0, 3, 1)))
    assert str(g) == "1/(q^2+3*q)"
    assert str(RatFunc.q(2, -3)) == "-3*q^2"
    assert str(ZERO) == "0"


def test_negative_powers_of_q():
    assert RatFunc.q(-2) * RatFunc.q(2) == ONE
    assert RatFunc.q(1, 3) ** -2 == RatFunc.q(-2, Fraction(1, 9))


def test_predicates():
    assert RatFunc.q(3, 5).is_monomial()
    assert not RatFunc.from_poly(QPoly((1, 1))).is_monomial()
    assert RatFunc.of(7).is_constant()
    assert RatFunc.of(7).constant_value() == 7
    assert not RatFunc.q(-1).is_polynomial()
    with pytest.raises(ValueError):
        RatFunc.q().constant_value()


def test_field_axioms_randomized():
    """Associativity, distributivity and inverses hold exactly."""
    rng = random.Random(20240611)
    for _ in range(60):
        a, b, c = (_random_element(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a + b == b + a
        assert a - a == ZERO
        if not a.is_zero():
            assert a * a.inverse() == ONE
            assert (b / a) * a == b


def test_field_arith_dispatch():
    a, b = RatFunc.q(1, 2), RatFunc.of(3)
    assert field_arith(a, b, "add") == a + b
    assert field_arith(a, b, "div") == a / b
    with pytest.raises(ValueError, match="Unknown field operation"):
        field_arith(a, b, "pow")  # type: ignore[arg-type]


def test_division_by_zero():
    with pytest.raises(FieldDivisionError, match="division by zero in Q\\(q\\)"):
        RatFunc.q() / ZERO
    with pytest.raises(ZeroDivisionError):
        normalize(QPoly((1,)), QPoly())


def test_evaluate_at():
    f = RatFunc.from_poly(QPoly((3, 0, 1))) / RatFunc.q(1, 2)
    assert evaluate_at(f, 1) == Fraction(2)
    assert evaluate_at(f, Fraction(1, 2)) == Fraction(13, 4)


def test_evaluate_at_pole():
    f = ONE / RatFunc.from_poly(QPoly((-1, 1)))
    with pytest.raises(PoleError) as exc_info:
        evaluate_at(f, 1)
    assert isinstance(exc_info.value, DomainError)
    assert exc_info.value.code == "pole"
