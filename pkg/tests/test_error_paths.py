"""Error codes, exit codes and position details."""

import pytest

from toricsh.dsl import parse_model
from toricsh.exceptions import (
    DomainError,
    FieldDivisionError,
    InfiniteQuotientError,
    ParseError,
    PoleError,
    ToolkitError,
)
from toricsh.geometry.bundles import BundleModel


def test_parse_error_details():
    error = ParseError("expected ')'", line=2, column=7)
    assert error.code == "parse_error"
    assert error.exit_code == 2
    assert error.message == "expected ')' (line 2, column 7)"
    assert error.details == {"line": 2, "column": 7}


def test_domain_error_defaults():
    error = DomainError("out of range")
    assert error.code == "domain_error"
    assert error.exit_code == 3
    assert error.details == {}
    assert str(error) == "out of range"


@pytest.mark.parametrize(
    "error, code",
    [
        (FieldDivisionError(), "division_by_zero"),
        (PoleError("pole"), "pole"),
        (InfiniteQuotientError(), "infinite_quotient"),
    ],
)
def test_subclass_codes(error, code):
    assert isinstance(error, DomainError)
    assert error.code == code
    assert error.exit_code == 3


def test_field_division_is_zero_division():
    assert isinstance(FieldDivisionError(), ZeroDivisionError)


def test_with_path_keeps_innermost():
    error = DomainError("bad leaf")
    error.with_path("$.left.child").with_path("$.left")
    assert error.details["path"] == "$.left.child"


def test_explicit_exit_code():
    error = ToolkitError("custom", "message", exit_code=5)
    assert error.exit_code == 5
    assert ToolkitError("custom", "message").exit_code == 1


def test_parser_attaches_position_to_domain_errors():
    with pytest.raises(DomainError) as exc_info:
        parse_model("Bl(2, flip(C^4, 3, 1))")
    assert exc_info.value.code == "not_semi_positive"
    assert exc_info.value.details["column"] == 7


def test_invalid_bundle_message():
    with pytest.raises(DomainError, match="m must be a positive integer"):
        BundleModel(0, 1, 1)
