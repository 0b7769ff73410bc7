# ---- File: algebra/polynomial.py ----

"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial is a map from exponent tuples to nonzero Fractions over a fixed,
ordered tuple of parameter names. Polynomials are immutable and hashable; two
polynomials only combine when their parameter tuples agree.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from errors import ExactDivisionError, StructuralError

Exponents = Tuple[int, ...]
Number = Union[int, Fraction]


def grlex_key(exponents: Exponents) -> Tuple[int, Exponents]:
    """Graded-lexicographic sort key (first parameter is the largest variable)."""
    return (sum(exponents), exponents)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Poly:
    __slots__ = ("parameters", "terms", "_hash")

    def __init__(self, parameters: Sequence[str], terms: Optional[Mapping[Exponents, Number]] = None):
        self.parameters: Tuple[str, ...] = tuple(parameters)
        width = len(self.parameters)
        cleaned: Dict[Exponents, Fraction] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != width or any(e < 0 for e in exps):
                raise StructuralError(f"Exponent tuple {exps} does not fit parameters {self.parameters}")
            value = Fraction(coeff) + cleaned.get(exps, 0)
            if value:
                cleaned[exps] = value
            else:
                cleaned.pop(exps, None)
        self.terms: Dict[Exponents, Fraction] = cleaned
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, parameters: Tuple[str, ...], terms: Dict[Exponents, Fraction]) -> "Poly":
        # Trusted constructor: terms already hold nonzero Fractions of the right width
        poly = object.__new__(cls)
        poly.parameters = parameters
        poly.terms = terms
        poly._hash = None
        return poly

    # --- Constructors ---

    @classmethod
    def zero(cls, parameters: Sequence[str]) -> "Poly":
        return cls._raw(tuple(parameters), {})

    @classmethod
    def constant(cls, parameters: Sequence[str], value: Number) -> "Poly":
        params = tuple(parameters)
        value = Fraction(value)
        return cls._raw(params, {(0,) * len(params): value} if value else {})

    @classmethod
    def one(cls, parameters: Sequence[str]) -> "Poly":
        return cls.constant(parameters, 1)

    @classmethod
    def variable(cls, parameters: Sequence[str], name: str) -> "Poly":
        params = tuple(parameters)
        if name not in params:
            raise StructuralError(f"Unknown parameter '{name}'", details={"parameters": list(params)})
        exps = tuple(1 if p == name else 0 for p in params)
        return cls._raw(params, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, parameters: Sequence[str], exponents: Exponents, coefficient: Number = 1) -> "Poly":
        return cls(parameters, {tuple(exponents): coefficient})

    @classmethod
    def from_univariate(cls, parameters: Sequence[str], name: str, coefficients: Sequence[Number]) -> "Poly":
        """Build sum(c_i * name^i) from low-to-high coefficients."""
        params = tuple(parameters)
        idx = params.index(name)
        terms: Dict[Exponents, Number] = {}
        for power, c in enumerate(coefficients):
            if c:
                exps = [0] * len(params)
                exps[idx] = power
                terms[tuple(exps)] = c
        return cls(params, terms)

    # --- Predicates and accessors ---

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise StructuralError(f"Polynomial {self} is not constant")
        return next(iter(self.terms.values())) if self.terms else Fraction(0)

    @property
    def is_one(self) -> bool:
        return self.is_constant and self.constant_value() == 1

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        idx = self.parameters.index(name)
        return max((e[idx] for e in self.terms), default=-1)

    def variables_used(self) -> Tuple[str, ...]:
        used = [False] * len(self.parameters)
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e:
                    used[i] = True
        return tuple(p for p, u in zip(self.parameters, used) if u)

    def leading_term(self) -> Tuple[Exponents, Fraction]:
        if not self.terms:
            raise StructuralError("The zero polynomial has no leading term")
        exps = max(self.terms, key=grlex_key)
        return exps, self.terms[exps]

    @property
    def leading_coefficient(self) -> Fraction:
        return self.leading_term()[1]

    def sorted_terms(self) -> List[Tuple[Exponents, Fraction]]:
        return sorted(self.terms.items(), key=lambda item: grlex_key(item[0]), reverse=True)

    # --- Arithmetic ---

    def _coerce(self, other: object) -> Optional["Poly"]:
        if isinstance(other, Poly):
            if other.parameters != self.parameters:
                raise StructuralError(
                    f"Parameter mismatch: {self.parameters} vs {other.parameters}",
                    details={"left": list(self.parameters), "right": list(other.parameters)},
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.constant(self.parameters, other)
        return None

    def __add__(self, other: object) -> "Poly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in rhs.terms.items():
            value = terms.get(exps, 0) + c
            if value:
                terms[exps] = value
            else:
                terms.pop(exps, None)
        return Poly._raw(self.parameters, terms)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.parameters, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: object) -> "Poly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Poly":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "Poly":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if not self.terms or not rhs.terms:
            return Poly.zero(self.parameters)
        if rhs.is_constant:
            c = rhs.constant_value()
            return Poly._raw(self.parameters, {e: v * c for e, v in self.terms.items()})
        terms: Dict[Exponents, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in rhs.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                value = terms.get(exps, 0) + c1 * c2
                if value:
                    terms[exps] = value
                else:
                    terms.pop(exps, None)
        return Poly._raw(self.parameters, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise StructuralError("Negative powers of polynomials are not polynomials")
        result = Poly.one(self.parameters)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def scale(self, factor: Number) -> "Poly":
        factor = Fraction(factor)
        if not factor:
            return Poly.zero(self.parameters)
        return Poly._raw(self.parameters, {e: c * factor for e, c in self.terms.items()})

    def exact_divide(self, divisor: "Poly") -> "Poly":
        """Quotient of an exact division; raises ExactDivisionError on a nonzero remainder."""
        divisor = self._coerce(divisor)  # type: ignore[assignment]
        if divisor.is_zero:
            raise ZeroDivisionError("Polynomial division by zero")
        if divisor.is_constant:
            return self.scale(1 / divisor.constant_value())
        lead_exps, lead_coeff = divisor.leading_term()
        quotient: Dict[Exponents, Fraction] = {}
        remainder = self
        while not remainder.is_zero:
            r_exps, r_coeff = remainder.leading_term()
            if any(a < b for a, b in zip(r_exps, lead_exps)):
                raise ExactDivisionError(f"{divisor} does not divide {self}")
            q_exps = tuple(a - b for a, b in zip(r_exps, lead_exps))
            q_coeff = r_coeff / lead_coeff
            quotient[q_exps] = quotient.get(q_exps, 0) + q_coeff
            remainder = remainder - Poly._raw(self.parameters, {q_exps: q_coeff}) * divisor
        return Poly(self.parameters, quotient)

    # --- Evaluation and substitution ---

    def evaluate(self, values: Mapping[str, Number]) -> Fraction:
        missing = [p for p in self.variables_used() if p not in values]
        if missing:
            raise StructuralError(f"No value supplied for parameters {missing}")
        points = [Fraction(values[p]) if p in values else Fraction(0) for p in self.parameters]
        total = Fraction(0)
        for exps, c in self.terms.items():
            term = c
            for x, e in zip(points, exps):
                if e:
                    term *= x ** e
            total += term
        return total

    def substitute(self, values: Mapping[str, Number]) -> "Poly":
        """Partial evaluation; the parameter tuple is kept."""
        fixed = {self.parameters.index(p): Fraction(v) for p, v in values.items() if p in self.parameters}
        if not fixed:
            return self
        terms: Dict[Exponents, Fraction] = {}
        for exps, c in self.terms.items():
            value = c
            new_exps = list(exps)
            for idx, x in fixed.items():
                if exps[idx]:
                    value *= x ** exps[idx]
                    new_exps[idx] = 0
            key = tuple(new_exps)
            total = terms.get(key, 0) + value
            if total:
                terms[key] = total
            else:
                terms.pop(key, None)
        return Poly._raw(self.parameters, terms)

    def univariate_coefficients(self, name: str) -> List[Fraction]:
        """Dense low-to-high coefficients; the polynomial must only involve `name`."""
        others = [p for p in self.variables_used() if p != name]
        if others:
            raise StructuralError(f"Polynomial {self} is not univariate in '{name}'")
        idx = self.parameters.index(name)
        coeffs = [Fraction(0)] * (self.degree_in(name) + 1)
        for exps, c in self.terms.items():
            coeffs[exps[idx]] = c
        return coeffs

    # --- Normalization ---

    def content(self) -> Fraction:
        """Positive rational content: gcd of numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(0)
        num, den = 0, 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = _lcm(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer coprime coefficients with a positive leading coefficient."""
        if not self.terms:
            return self
        factor = self.content()
        if self.leading_coefficient < 0:
            factor = -factor
        return self.scale(1 / factor)

    def monomial_content(self) -> Exponents:
        if not self.terms:
            return (0,) * len(self.parameters)
        return tuple(min(e[i] for e in self.terms) for i in range(len(self.parameters)))

    def strip_monomial_content(self) -> "Poly":
        low = self.monomial_content()
        if not any(low):
            return self
        return Poly._raw(
            self.parameters,
            {tuple(a - b for a, b in zip(e, low)): c for e, c in self.terms.items()},
        )

    def normalized_factor(self) -> "Poly":
        """Drop units over positive parameters: rational content and monomial factors."""
        return self.strip_monomial_content().primitive()

    # --- Comparison and display ---

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.parameters == other.parameters and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.parameters, frozenset(self.terms.items())))
        return self._hash

    def _monomial_text(self, exps: Exponents) -> str:
        factors = []
        for name, e in zip(self.parameters, exps):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: List[str] = []
        for position, (exps, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_text(exps)
            magnitude = abs(c)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude}*{mono}"
            if position == 0:
                pieces.append(f"-{body}" if c < 0 else body)
            else:
                pieces.append(f"- {body}" if c < 0 else f"+ {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r}, parameters={self.parameters})"


def univariate_gcd(a: Poly, b: Poly, name: str) -> Poly:
    """Monic gcd of two polynomials that only involve `name` (Euclid over Q)."""
    x = a.univariate_coefficients(name)
    y = b.univariate_coefficients(name)
    x = _trim(x)
    y = _trim(y)
    while y:
        _, r = dense_divmod(x, y)
        x, y = y, r
    if not x:
        return Poly.zero(a.parameters)
    lead = x[-1]
    return Poly.from_univariate(a.parameters, name, [c / lead for c in x])


def _trim(coeffs: List[Fraction]) -> List[Fraction]:
    coeffs = list(coeffs)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def dense_divmod(a: Sequence[Fraction], b: Sequence[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    """Euclidean division of dense low-to-high coefficient lists."""
    rem = _trim(list(a))
    div = _trim(list(b))
    if not div:
        raise ZeroDivisionError("Division by the zero polynomial")
    quot = [Fraction(0)] * max(len(rem) - len(div) + 1, 1)
    while len(rem) >= len(div) and rem:
        shift = len(rem) - len(div)
        factor = rem[-1] / div[-1]
        quot[shift] = factor
        for i, c in enumerate(div):
            rem[i + shift] -= factor * c
        rem = _trim(rem)
    return _trim(quot), rem
