"""Surface syntax for model expressions.

    model  := term { "#" term }
    term   := bundle | blowup | flip | cn | "(" model ")"
    bundle := "O(-" INT ")" [ "^" INT ] "->" "P^" INT
    blowup := "Bl(" INT "," model ")"
    flip   := "flip(" model "," INT "," INT ")"
    cn     := "C^" INT

Parsed trees are normalized: connected sums are flattened and
right-associated, nested blow-ups merge their counts.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Any, Callable, Optional, TypeVar

from toricsh.exceptions import DomainError, ParseError
from toricsh.geometry.bundles import BundleModel
from toricsh.geometry.surgery import Blowup, Bundle, Cn, ConnSum, Flip, ModelExpr

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEPTH = 8
DEFAULT_MAX_BLOWUPS = 64

_TOKEN_RE = re.compile(r"(\d+)|([A-Za-z]+)|(->|[()^,#-])")
_KEYWORDS = {"O", "P", "C", "Bl", "flip"}

T = TypeVar("T")


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, column = 1, 1
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch == "\n":
            line, column = line + 1, 1
            pos += 1
            continue
        if ch.isspace():
            column += 1
            pos += 1
            continue
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {ch!r}", line=line, column=column)
        number, name, symbol = match.groups()
        if number is not None:
            tokens.append(Token("int", number, line, column))
        elif name is not None:
            if name not in _KEYWORDS:
                raise ParseError(f"unknown name {name!r}", line=line, column=column)
            tokens.append(Token("name", name, line, column))
        else:
            tokens.append(Token("sym", symbol, line, column))
        column += match.end() - pos
        pos = match.end()
    tokens.append(Token("eof", "", line, column))
    return tokens


class _ModelParser:
    def __init__(self, text: str, max_depth: int) -> None:
        self.tokens = tokenize(text)
        self.index = 0
        self.depth = 0
        self.max_depth = max_depth

    def peek(self) -> Token:
        return self.tokens[self.index]

    def take(self) -> Token:
        token = self.tokens[self.index]
        if token.kind != "eof":
            self.index += 1
        return token

    def fail(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.peek()
        found = "end of input" if token.kind == "eof" else repr(token.value)
        return ParseError(f"{message}, found {found}", line=token.line, column=token.column)

    def expect(self, kind: str, value: Optional[str] = None) -> Token:
        token = self.peek()
        if token.kind != kind or (value is not None and token.value != value):
            wanted = repr(value) if value is not None else "an integer"
            raise self.fail(f"expected {wanted}")
        return self.take()

    def integer(self) -> int:
        return int(self.expect("int").value)

    def parse(self) -> ModelExpr:
        if self.peek().kind == "eof":
            raise self.fail("empty model expression")
        model = self.model()
        if self.peek().kind != "eof":
            raise self.fail("unexpected trailing input")
        return model

    def _build(self, token: Token, factory: Callable[..., T], *args: Any) -> T:
        try:
            return factory(*args)
        except DomainError as exc:
            exc.details.setdefault("line", token.line)
            exc.details.setdefault("column", token.column)
            raise

    def model(self) -> ModelExpr:
        self.depth += 1
        if self.depth > self.max_depth:
            raise DomainError(
                f"model nesting deeper than {self.max_depth}",
                code="model_too_deep",
                details={"line": self.peek().line, "column": self.peek().column},
            )
        terms = [self.term()]
        ops: list[Token] = []
        while self.peek().kind == "sym" and self.peek().value == "#":
            ops.append(self.take())
            terms.append(self.term())
        result = terms[-1]
        for op, left in zip(reversed(ops), reversed(terms[:-1])):
            result = self._build(op, ConnSum, left, result)
        self.depth -= 1
        return result

    def term(self) -> ModelExpr:
        token = self.peek()
        if token.kind == "sym" and token.value == "(":
            self.take()
            inner = self.model()
            self.expect("sym", ")")
            return inner
        if token.kind != "name":
            raise self.fail("expected a model term")
        if token.value == "O":
            return self.bundle()
        if token.value == "Bl":
            return self.blowup()
        if token.value == "flip":
            return self.flip()
        if token.value == "C":
            self.take()
            self.expect("sym", "^")
            return self._build(token, Cn, self.integer())
        raise self.fail("expected O(, Bl(, flip( or C^")

    def bundle(self) -> ModelExpr:
        start = self.take()
        self.expect("sym", "(")
        self.expect("sym", "-")
        m = self.integer()
        self.expect("sym", ")")
        n1 = 1
        if self.peek().kind == "sym" and self.peek().value == "^":
            self.take()
            n1 = self.integer()
        self.expect("sym", "->")
        self.expect("name", "P")
        self.expect("sym", "^")
        n2 = self.integer()
        return Bundle(self._build(start, BundleModel, m, n1, n2))

    def blowup(self) -> ModelExpr:
        start = self.take()
        self.expect("sym", "(")
        count = self.integer()
        self.expect("sym", ",")
        child = self.model()
        self.expect("sym", ")")
        return self._build(start, Blowup, count, child)

    def flip(self) -> ModelExpr:
        start = self.take()
        self.expect("sym", "(")
        child = self.model()
        self.expect("sym", ",")
        n1 = self.integer()
        self.expect("sym", ",")
        n2 = self.integer()
        self.expect("sym", ")")
        return self._build(start, Flip, child, n1, n2)


def _summands(model: ModelExpr) -> list[ModelExpr]:
    if isinstance(model, ConnSum):
        return _summands(model.left) + _summands(model.right)
    return [model]


def normalize(model: ModelExpr) -> ModelExpr:
    """Right-associate connected sums and merge nested blow-up counts."""
    if isinstance(model, ConnSum):
        parts = [normalize(p) for p in _summands(model)]
        flat: list[ModelExpr] = []
        for p in parts:
            flat.extend(_summands(p))
        result = flat[-1]
        for left in reversed(flat[:-1]):
            result = ConnSum(left, result)
        return result
    if isinstance(model, Blowup):
        child = normalize(model.child)
        if isinstance(child, Blowup):
            return Blowup(model.count + child.count, child.child)
        return Blowup(model.count, child)
    if isinstance(model, Flip):
        return Flip(normalize(model.child), model.n1, model.n2)
    return model


def blowup_total(model: ModelExpr) -> int:
    if isinstance(model, Blowup):
        return model.count + blowup_total(model.child)
    if isinstance(model, Flip):
        return blowup_total(model.child)
    if isinstance(model, ConnSum):
        return blowup_total(model.left) + blowup_total(model.right)
    return 0


def parse_model(
    text: str,
    *,
    max_depth: int = DEFAULT_MAX_DEPTH,
    max_blowups: int = DEFAULT_MAX_BLOWUPS,
) -> ModelExpr:
    """Parse and normalize a model expression."""
    model = normalize(_ModelParser(text, max_depth).parse())
    total = blowup_total(model)
    if total > max_blowups:
        raise DomainError(
            f"{total} blown-up points exceed the limit of {max_blowups}",
            code="too_many_blowups",
        )
    logger.debug("Parsed %r as %s", text, format_model(model))
    return model


def format_model(model: ModelExpr) -> str:
    """Canonical text of a model; parse_model(format_model(x)) == x for normalized x."""
    if isinstance(model, Bundle):
        return model.model.describe()
    if isinstance(model, Cn):
        return f"C^{model.n}"
    if isinstance(model, Blowup):
        return f"Bl({model.count}, {format_model(model.child)})"
    if isinstance(model, Flip):
        return f"flip({format_model(model.child)}, {model.n1}, {model.n2})"
    if isinstance(model, ConnSum):
        return f"{_summand_text(model.left)} # {_summand_text(model.right, right=True)}"
    raise TypeError(f"not a model expression: {model!r}")


def _summand_text(model: ModelExpr, right: bool = False) -> str:
    text = format_model(model)
    if isinstance(model, Bundle) or (isinstance(model, ConnSum) and not right):
        return f"({text})"
    return text
