"""Custom exceptions with stable error codes and process exit codes."""

from typing import Any, Dict, Optional


class ToolkitError(Exception):
    """Error that maps to a stable machine code and CLI exit code."""

    exit_code: int = 1

    def __init__(
        self,
        code: str,
        message: str,
        *,
        exit_code: Optional[int] = None,
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(message)
        self.code = code
        self.message = message
        if exit_code is not None:
            self.exit_code = exit_code
        self.details = details or {}

    def with_path(self, path: str) -> "ToolkitError":
        """Attach the model-tree path of the leaf being evaluated."""
        self.details.setdefault("path", path)
        return self


class ParseError(ToolkitError):
    """Syntax error in a model expression."""

    exit_code = 2

    def __init__(self, message: str, *, line: int, column: int) -> None:
        super().__init__(
            "parse_error",
            f"{message} (line {line}, column {column})",
            details={"line": line, "column": column},
        )
        self.line = line
        self.column = column


class DomainError(ToolkitError):
    """Parameters or models outside the implemented family."""

    exit_code = 3

    def __init__(
        self,
        message: str,
        *,
        code: str = "domain_error",
        details: Optional[Dict[str, Any]] = None,
    ) -> None:
        super().__init__(code, message, details=details)


class FieldDivisionError(DomainError, ZeroDivisionError):
    """Division by zero in Q(q)."""

    def __init__(self, message: str = "division by zero in Q(q)") -> None:
        super().__init__(message, code="division_by_zero")


class PoleError(DomainError):
    """Evaluation of a rational function at one of its poles."""

    def __init__(self, message: str) -> None:
        super().__init__(message, code="pole")


class InfiniteQuotientError(DomainError):
    """Quotient ring is not finite-dimensional."""

    def __init__(self, message: str = "quotient not finite-dimensional") -> None:
        super().__init__(message, code="infinite_quotient")
