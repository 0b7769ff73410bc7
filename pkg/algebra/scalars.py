# ---- File: algebra/scalars.py ----

"""Rational functions in the metric parameters and the Scalar union.

Every coefficient in the engine is a Scalar: a Fraction in numeric mode or a
RatFunc in parametric mode. Helpers here let the rest of the code stay
agnostic of which one it holds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Optional, Sequence, Tuple, Union

from algebra.polynomial import Poly, univariate_gcd
from errors import ExactDivisionError, StructuralError

Number = Union[int, Fraction]


class RatFunc:
    """num/den with a nonzero denominator whose leading coefficient is positive."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Optional[Poly] = None):
        if den is None:
            den = Poly.one(num.parameters)
        if den.parameters != num.parameters:
            raise StructuralError(f"Parameter mismatch: {num.parameters} vs {den.parameters}")
        if den.is_zero:
            raise ZeroDivisionError("Rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def constant(cls, parameters: Sequence[str], value: Number) -> "RatFunc":
        return cls(Poly.constant(parameters, value))

    @classmethod
    def variable(cls, parameters: Sequence[str], name: str) -> "RatFunc":
        return cls(Poly.variable(parameters, name))

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.num.parameters

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.den.is_constant and self.num.is_constant

    @property
    def is_polynomial(self) -> bool:
        return self.den.is_constant

    def as_fraction(self) -> Optional[Fraction]:
        if self.is_constant:
            return self.num.constant_value() / self.den.constant_value()
        return None

    def as_poly(self) -> Poly:
        if not self.den.is_constant:
            raise StructuralError(f"{self} is not a polynomial")
        return self.num.scale(1 / self.den.constant_value())

    # --- Arithmetic ---

    def _coerce(self, other: object) -> Optional["RatFunc"]:
        if isinstance(other, RatFunc):
            if other.parameters != self.parameters:
                raise StructuralError(f"Parameter mismatch: {self.parameters} vs {other.parameters}")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.parameters, other)
        return None

    def __add__(self, other: object) -> "RatFunc":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.den == rhs.den:
            return RatFunc(self.num + rhs.num, self.den)
        return RatFunc(self.num * rhs.den + rhs.num * self.den, self.den * rhs.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other: object) -> "RatFunc":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "RatFunc":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "RatFunc":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if self.is_zero or rhs.is_zero:
            return RatFunc(Poly.zero(self.parameters))
        return RatFunc(self.num * rhs.num, self.den * rhs.den)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "RatFunc":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs.is_zero:
            raise ZeroDivisionError(f"Division of {self} by zero")
        return RatFunc(self.num * rhs.den, self.den * rhs.num)

    def __rtruediv__(self, other: object) -> "RatFunc":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs / self

    def __pow__(self, exponent: int) -> "RatFunc":
        if exponent < 0:
            return RatFunc(self.den ** (-exponent), self.num ** (-exponent))
        return RatFunc(self.num ** exponent, self.den ** exponent)

    # --- Evaluation ---

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        den = self.den.evaluate(values)
        if not den:
            raise ZeroDivisionError(f"Denominator of {self} vanishes at {dict(values)}")
        return self.num.evaluate(values) / den

    def substitute(self, values: Mapping[str, Number]) -> "Scalar":
        return simplify(RatFunc(self.num.substitute(values), _nonzero(self.den.substitute(values), self, values)))

    # --- Comparison and display ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (RatFunc, Poly)):
            if other.parameters != self.parameters:
                return False
            rhs = other if isinstance(other, RatFunc) else RatFunc(other)
        elif isinstance(other, (int, Fraction)):
            rhs = RatFunc.constant(self.parameters, other)
        else:
            return NotImplemented
        return self.num * rhs.den == rhs.num * self.den

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        if self.den.is_one:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({str(self)!r})"


Scalar = Union[Fraction, RatFunc]


def _nonzero(den: Poly, source: RatFunc, values: Mapping[str, Number]) -> Poly:
    if den.is_zero:
        raise ZeroDivisionError(f"Denominator of {source} vanishes at {dict(values)}")
    return den


def _normalize(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if num.is_zero:
        return num, Poly.one(num.parameters)
    if den.is_constant:
        return num.scale(1 / den.constant_value()), Poly.one(num.parameters)
    # Cancel the common monomial factor
    low_n, low_d = num.monomial_content(), den.monomial_content()
    common = tuple(min(a, b) for a, b in zip(low_n, low_d))
    if any(common):
        mono = Poly.monomial(num.parameters, common)
        num, den = num.exact_divide(mono), den.exact_divide(mono)
    # Cancel common univariate factors
    used = set(num.variables_used()) | set(den.variables_used())
    if len(used) == 1:
        name = next(iter(used))
        g = univariate_gcd(num, den, name)
        if not g.is_constant:
            num, den = num.exact_divide(g), den.exact_divide(g)
    elif not den.is_constant:
        try:
            num, den = num.exact_divide(den), Poly.one(num.parameters)
        except ExactDivisionError:
            pass
    if den.is_constant:
        return num.scale(1 / den.constant_value()), Poly.one(num.parameters)
    # Primitive denominator with positive leading coefficient
    factor = den.content()
    if den.leading_coefficient < 0:
        factor = -factor
    return num.scale(1 / factor), den.scale(1 / factor)


# --- Scalar helpers ---


def simplify(value: Scalar) -> Scalar:
    """Collapse constant rational functions to Fractions."""
    if isinstance(value, RatFunc):
        constant = value.as_fraction()
        if constant is not None:
            return constant
    return value


def is_zero(value: Scalar) -> bool:
    if isinstance(value, RatFunc):
        return value.is_zero
    return not value


def is_parametric(value: Scalar) -> bool:
    return isinstance(value, RatFunc) and not value.is_constant


def specialize(value: Scalar, values: Mapping[str, Number]) -> Scalar:
    if isinstance(value, RatFunc):
        return value.substitute(values)
    return value


def evaluate(value: Scalar, values: Mapping[str, Number]) -> Fraction:
    if isinstance(value, RatFunc):
        return value.evaluate(values)
    return value


def scalar_text(value: Scalar) -> str:
    return str(simplify(value))
