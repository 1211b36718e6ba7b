"""Tests for the model expression parser and formatter."""

import pytest

from toricsh.dsl import format_model, parse_model, tokenize
from toricsh.exceptions import DomainError, ParseError
from toricsh.geometry.bundles import BundleModel
from toricsh.geometry.surgery import Blowup, Bundle, Cn, ConnSum, Flip


def test_parse_bundle():
    assert parse_model("O(-1)^2 -> P^3") == Bundle(BundleModel(1, 2, 3))
    assert parse_model("O(-2)->P^2") == Bundle(BundleModel(2, 1, 2))


def test_parse_blowup_and_flip():
    assert parse_model("Bl(3, C^2)") == Blowup(3, Cn(2))
    assert parse_model("flip(C^5, 2, 3)") == Flip(Cn(5), 2, 3)


def test_nested_blowups_merge():
    assert parse_model("Bl(1, Bl(2, C^2))") == Blowup(3, Cn(2))


def test_connected_sums_right_associate():
    left_nested = parse_model("(C^3 # C^3) # flip(C^3, 1, 2)")
    assert left_nested == ConnSum(Cn(3), ConnSum(Cn(3), Flip(Cn(3), 1, 2)))
    assert parse_model("C^3 # C^3 # flip(C^3, 1, 2)") == left_nested


@pytest.mark.parametrize(
    "text",
    [
        "O(-1) -> P^2",
        "Bl(2, C^3)",
        "flip(Bl(2, C^3), 1, 2)",
        "(O(-1) -> P^2) # flip(C^3, 1, 2)",
        "C^3 # (O(-1) -> P^2) # Bl(1, C^3)",
    ],
)
def test_format_is_canonical(text):
    model = parse_model(text)
    assert format_model(model) == text
    assert parse_model(format_model(model)) == model


def test_tokenize_positions():
    tokens = tokenize("Bl(2,\n  C^3)")
    c_token = next(t for t in tokens if t.value == "C")
    assert (c_token.line, c_token.column) == (2, 3)
    assert tokens[-1].kind == "eof"


@pytest.mark.parametrize(
    "text, line, column",
    [
        ("O(-1) -> Q^2", 1, 10),
        ("Bl(3, C^2", 1, 10),
        ("C^2 #\n  X", 2, 3),
        ("C^2 $", 1, 5),
    ],
)
def test_parse_error_positions(text, line, column):
    with pytest.raises(ParseError) as exc_info:
        parse_model(text)
    assert (exc_info.value.line, exc_info.value.column) == (line, column)
    assert exc_info.value.exit_code == 2


def test_parse_error_messages():
    with pytest.raises(ParseError, match="empty model expression"):
        parse_model("   ")
    with pytest.raises(ParseError, match="unexpected trailing input"):
        parse_model("C^2 C^2")
    with pytest.raises(ParseError, match="found end of input"):
        parse_model("Bl(3, C^2")


def test_model_too_deep():
    with pytest.raises(DomainError) as exc_info:
        parse_model("Bl(1, Bl(1, Bl(1, C^2)))", max_depth=2)
    assert exc_info.value.code == "model_too_deep"


def test_too_many_blowups():
    with pytest.raises(DomainError) as exc_info:
        parse_model("Bl(5, C^2)", max_blowups=4)
    assert exc_info.value.code == "too_many_blowups"
    assert parse_model("Bl(4, C^2)", max_blowups=4) == Blowup(4, Cn(2))


def test_domain_errors_carry_position():
    with pytest.raises(DomainError) as exc_info:
        parse_model("C^2 # C^3")
    assert exc_info.value.code == "dimension_mismatch"
    assert exc_info.value.details["column"] == 5
    assert exc_info.value.exit_code == 3

    with pytest.raises(DomainError) as exc_info:
        parse_model("O(-1)^3 -> P^1")
    assert exc_info.value.code == "not_semi_positive"
    assert (exc_info.value.details["line"], exc_info.value.details["column"]) == (1, 1)
