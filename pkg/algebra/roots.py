# ---- File: algebra/roots.py ----

"""Exact real-root isolation for univariate rational polynomials, on top of sympy.

The square-free part is isolated with sympy's real-root intervals, refined to
the configured width. Roots that are rational are reported exactly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import sympy
from sympy import QQ

from algebra.polynomial import Poly
from config import settings
from errors import StructuralError, UnsupportedError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootInterval:
    """A real root: exact when lower == upper, otherwise the only root in (lower, upper)."""

    lower: Fraction
    upper: Fraction
    exact: bool

    @property
    def is_positive(self) -> bool:
        return self.lower > 0 or (not self.exact and self.lower == 0)

    def __str__(self) -> str:
        if self.exact:
            return str(self.lower)
        return f"({self.lower}, {self.upper})"


# --- sympy conversions ---


def _to_rational(x: Fraction) -> sympy.Rational:
    return sympy.Rational(x.numerator, x.denominator)


def _to_fraction(x: sympy.Rational) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def to_sympy(p: Poly, name: str) -> sympy.Poly:
    """The univariate Poly in `name` as a sympy polynomial over QQ."""
    coeffs = p.univariate_coefficients(name)
    return sympy.Poly([_to_rational(c) for c in reversed(coeffs)], sympy.Symbol(name), domain=QQ)


def real_roots(p: Poly, refine_width: Optional[Fraction] = None) -> List[RootInterval]:
    """All distinct real roots of a nonzero univariate polynomial, sorted."""
    if p.is_zero:
        raise StructuralError("The zero polynomial has no isolated roots")
    used = p.variables_used()
    if len(used) > 1:
        raise UnsupportedError(
            f"Root isolation needs a univariate polynomial, got variables {list(used)}",
            details={"polynomial": str(p)},
        )
    if not used:
        return []
    width = refine_width if refine_width is not None else settings.refine_width
    square_free = to_sympy(p, used[0]).sqf_part()
    if square_free.degree() < 1:
        return []

    rational = sorted(_to_fraction(r) for r in square_free.ground_roots())
    intervals = [
        (_to_fraction(lower), _to_fraction(upper))
        for (lower, upper), _ in square_free.intervals(eps=_to_rational(width))
    ]
    # Each rational root is claimed by exactly one interval, degenerate ones first
    claimed = {lo for lo, hi in intervals if lo == hi}
    roots: List[RootInterval] = []
    for lo, hi in intervals:
        if lo == hi:
            roots.append(RootInterval(lo, hi, True))
            continue
        hit = next((r for r in rational if r not in claimed and lo <= r <= hi), None)
        if hit is None:
            roots.append(RootInterval(lo, hi, False))
        else:
            claimed.add(hit)
            roots.append(RootInterval(hit, hit, True))
    roots.sort(key=lambda r: r.lower)
    logger.debug(f"Isolated {len(roots)} real roots of {p}")
    return roots


def positive_roots(roots: Sequence[RootInterval]) -> List[RootInterval]:
    return [r for r in roots if r.is_positive]
