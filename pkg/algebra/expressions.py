# ---- File: algebra/expressions.py ----

"""Parser for exact scalar text: "3/4", "2/t", "(t^2 - 1)/(t + 2)", "$t1".

Grammar (usual precedence, left associative):
    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := ('+' | '-') factor | atom (('^' | '**') INT)?
    atom   := INT | NAME | '$' NAME | '(' expr ')'

Decimal points are rejected so no binary float can sneak into exact data.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from algebra.polynomial import Poly
from algebra.scalars import RatFunc, Scalar, simplify
from errors import SpecParseError

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+[eE][-+]?\d+)|(\d+)|\$?([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")

_Value = Union[Fraction, RatFunc]


def _tokenize(text: str) -> List[Tuple[str, str]]:
    tokens: List[Tuple[str, str]] = []
    pos = 0
    stripped = text.rstrip()
    while pos < len(stripped):
        match = _TOKEN.match(stripped, pos)
        if not match or match.end() == pos:
            raise SpecParseError(f"Unexpected character in {text!r} at offset {pos}", code="malformed_rational")
        if match.group(1):
            raise SpecParseError(f"Floating point literal {match.group(1)!r} is not exact", code="float_rejected")
        if match.group(2):
            tokens.append(("int", match.group(2)))
        elif match.group(3):
            tokens.append(("name", match.group(3)))
        else:
            tokens.append(("op", match.group(4)))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, text: str, parameters: Sequence[str]):
        self.text = text
        self.parameters = tuple(parameters)
        self.tokens = _tokenize(text)
        self.pos = 0

    def _peek(self) -> Tuple[str, str]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else ("end", "")

    def _take(self) -> Tuple[str, str]:
        token = self._peek()
        self.pos += 1
        return token

    def _fail(self, message: str) -> SpecParseError:
        return SpecParseError(f"{message} in {self.text!r}", code="malformed_rational")

    def parse(self) -> Scalar:
        if not self.tokens:
            raise self._fail("Empty expression")
        value = self._expr()
        if self._peek()[0] != "end":
            raise self._fail(f"Unexpected token {self._peek()[1]!r}")
        return simplify(value) if isinstance(value, RatFunc) else value

    def _expr(self) -> _Value:
        value = self._term()
        while self._peek() in (("op", "+"), ("op", "-")):
            op = self._take()[1]
            rhs = self._term()
            value = _combine(value, rhs, op)
        return value

    def _term(self) -> _Value:
        value = self._factor()
        while self._peek() in (("op", "*"), ("op", "/")):
            op = self._take()[1]
            rhs = self._factor()
            if op == "/" and _is_zero(rhs):
                raise SpecParseError(f"Division by zero in {self.text!r}", code="malformed_rational")
            value = _combine(value, rhs, op)
        return value

    def _factor(self) -> _Value:
        if self._peek() == ("op", "-"):
            self._take()
            return -self._factor()
        if self._peek() == ("op", "+"):
            self._take()
            return self._factor()
        base = self._atom()
        if self._peek() in (("op", "^"), ("op", "**")):
            self._take()
            kind, text = self._take()
            if kind != "int":
                raise self._fail("Exponent must be a non-negative integer")
            return base ** int(text)
        return base

    def _atom(self) -> _Value:
        kind, text = self._take()
        if kind == "int":
            return Fraction(int(text))
        if kind == "name":
            if text not in self.parameters:
                raise SpecParseError(
                    f"Undeclared parameter '{text}' in {self.text!r}",
                    code="undeclared_parameter",
                    details={"declared": list(self.parameters)},
                )
            return RatFunc(Poly.variable(self.parameters, text))
        if (kind, text) == ("op", "("):
            value = self._expr()
            if self._take() != ("op", ")"):
                raise self._fail("Unbalanced parenthesis")
            return value
        raise self._fail(f"Unexpected token {text!r}" if text else "Unexpected end of input")


def _is_zero(value: _Value) -> bool:
    return value.is_zero if isinstance(value, RatFunc) else not value


def _combine(lhs: _Value, rhs: _Value, op: str) -> _Value:
    if op == "+":
        return lhs + rhs  # type: ignore[operator]
    if op == "-":
        return lhs - rhs  # type: ignore[operator]
    if op == "*":
        return lhs * rhs  # type: ignore[operator]
    return lhs / rhs  # type: ignore[operator]


def parse_scalar(text: Union[str, int], parameters: Sequence[str] = ()) -> Scalar:
    """Parse exact scalar text; plain integers are accepted as-is."""
    if isinstance(text, bool) or isinstance(text, float):
        raise SpecParseError(f"Floating point value {text!r} is not exact", code="float_rejected")
    if isinstance(text, int):
        return Fraction(text)
    return _Parser(text, parameters).parse()


def parse_rational(text: Union[str, int]) -> Fraction:
    value = parse_scalar(text, ())
    assert isinstance(value, Fraction)
    return value


def parse_poly(text: str, parameters: Sequence[str]) -> Poly:
    value = parse_scalar(text, parameters)
    if isinstance(value, Fraction):
        return Poly.constant(parameters, value)
    if not value.is_polynomial:
        raise SpecParseError(f"{text!r} is not a polynomial", code="malformed_rational")
    return value.as_poly()
