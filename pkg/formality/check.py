# ---- File: formality/check.py ----

"""Wedge products of harmonic forms, tested for harmonicity.

A product of harmonic forms is closed; it is harmonic exactly when it is
orthogonal to every invariant exact form of its degree.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Tuple

from algebra.polynomial import Poly
from algebra.roots import positive_roots, real_roots
from algebra.scalars import RatFunc, Scalar, is_zero, scalar_text
from config import settings
from errors import StructuralError, UnsupportedError
from forms.differential import d_form
from forms.exterior import Form, power, wedge
from forms.metric import MetricOnM, inner_product
from formality.reports import (
    FORMAL,
    HOMOGENEOUS_ASSUMPTIONS,
    NOT_FORMAL,
    FormalityReport,
    ObstructionPolynomial,
    ObstructionReport,
    Witness,
)
from invariants.complex import FormSpace, exact_primitive, harmonic_space, invariant_complex
from lie.space import HomogeneousSpace

logger = logging.getLogger(__name__)


def _first_failure(product: Form, exact: FormSpace, g: MetricOnM) -> Optional[Tuple[int, Scalar]]:
    for idx, e in enumerate(exact.basis):
        value = inner_product(product, e, g)
        if not is_zero(value):
            return idx, value
    return None


def _witness(
    space: HomogeneousSpace,
    degrees: Tuple[int, ...],
    indices: Tuple[int, ...],
    product: Form,
    failure: Tuple[int, Scalar],
) -> Witness:
    primitive = exact_primitive(space, product)
    return Witness(
        degrees=degrees,
        indices=indices,
        product=product.to_text(space.m_labels),
        exact_index=failure[0],
        pairing=failure[1],
        primitive=primitive.to_text(space.m_labels) if primitive is not None else None,
        note="product is exact" if primitive is not None else "",
    )


def formality_check(space: HomogeneousSpace, g: MetricOnM, max_degree: Optional[int] = None) -> FormalityReport:
    """Formal iff every tested product of harmonic basis forms is again harmonic."""
    if g.is_parametric:
        raise UnsupportedError(
            "Formality verdicts need a rational metric; use parametric_obstruction for parametric metrics",
            code="parametric_metric",
            details={"parameters": list(g.parameters)},
        )
    top = space.dim_m if max_degree is None else min(max_degree, space.dim_m)
    cx = invariant_complex(space)
    harmonic: Dict[int, FormSpace] = {}
    for k in range(1, space.dim_m):
        h = harmonic_space(space, k, g)
        if h.dim:
            harmonic[k] = h
    report = FormalityReport(FORMAL, assumptions=list(HOMOGENEOUS_ASSUMPTIONS))
    if not harmonic:
        report.reason = "no harmonic forms in intermediate degrees"
        logger.info(f"'{space.name}' has no intermediate cohomology; formal")
        return report

    degrees = sorted(harmonic)
    # pairs of basis forms
    for k1, k2 in combinations_with_replacement(degrees, 2):
        if k1 + k2 > top:
            continue
        report.checked_degrees.append((k1, k2))
        exact = cx.exact(k1 + k2)
        for i, a in enumerate(harmonic[k1].basis):
            for j, b in enumerate(harmonic[k2].basis):
                if k1 == k2 and j < i:
                    continue
                product = wedge(a, b)
                if not d_form(space, product).is_zero:
                    raise StructuralError(f"Product of harmonic {k1}- and {k2}-forms is not closed")
                failure = _first_failure(product, exact, g)
                if failure is not None:
                    report.verdict = NOT_FORMAL
                    report.witnesses.append(_witness(space, (k1, k2), (i, j), product, failure))
                    report.reason = f"product of harmonic forms in degrees {k1}, {k2} is not harmonic"
                    logger.info(f"'{space.name}' not formal: {report.reason}")
                    return report

    # left-nested powers
    for k in degrees:
        for i, a in enumerate(harmonic[k].basis):
            p = 3
            while p * k <= top:
                report.checked_degrees.append(tuple([k] * p))
                product = power(a, p)
                failure = _first_failure(product, cx.exact(p * k), g)
                if failure is not None:
                    report.verdict = NOT_FORMAL
                    report.witnesses.append(_witness(space, tuple([k] * p), tuple([i] * p), product, failure))
                    report.reason = f"power {p} of a harmonic {k}-form is not harmonic"
                    return report
                p += 1
    report.reason = "every tested product of harmonic forms is harmonic"
    logger.info(f"'{space.name}' formal at the given metric ({len(report.checked_degrees)} degree tuples checked)")
    return report


def _condition(value: Scalar) -> Optional[Poly]:
    """Numerator of a nonzero pairing with unit factors removed."""
    if is_zero(value):
        return None
    if not isinstance(value, RatFunc):
        return None
    num = value.num
    if num.is_constant:
        return Poly.one(num.parameters)
    return num.normalized_factor()


def parametric_obstruction(space: HomogeneousSpace, degrees: Tuple[int, int], g: MetricOnM) -> ObstructionReport:
    """Polynomial conditions on the parameters for the product of harmonic forms to be harmonic."""
    k1, k2 = degrees
    report = ObstructionReport((k1, k2))
    if k1 + k2 > space.dim_m:
        return report
    h1 = harmonic_space(space, k1, g)
    h2 = h1 if k2 == k1 else harmonic_space(space, k2, g)
    report.pivots = sorted(set(h1.pivots) | set(h2.pivots), key=str)
    exact = invariant_complex(space).exact(k1 + k2)

    conditions: Dict[Poly, None] = {}
    always_fails = False
    for i, a in enumerate(h1.basis):
        for j, b in enumerate(h2.basis):
            if k1 == k2 and j < i:
                continue
            report.products_tested += 1
            product = wedge(a, b)
            for e in exact.basis:
                value = inner_product(product, e, g)
                if is_zero(value):
                    continue
                poly = _condition(value)
                if poly is None or poly.is_constant:
                    always_fails = True
                    logger.info(f"product ({k1},{k2})[{i},{j}] pairs to the nonzero constant {scalar_text(value)}")
                    continue
                conditions.setdefault(poly, None)

    polys: List[Poly] = sorted(conditions, key=str)
    if always_fails:
        params = g.parameters or space.parameters
        polys.insert(0, Poly.one(params))
    for poly in polys:
        used = poly.variables_used()
        if len(used) == 1:
            roots = tuple(real_roots(poly, settings.refine_width))
            report.obstructions.append(ObstructionPolynomial(poly, roots, tuple(positive_roots(roots)), True))
        else:
            report.obstructions.append(ObstructionPolynomial(poly))
    logger.info(
        f"obstructions for degrees {degrees} on '{space.name}': {[str(p) for p in polys]}"
    )
    return report


def obstruction_holds(report: ObstructionReport, values: Dict[str, Fraction]) -> bool:
    """True when the product is harmonic at the given parameter values (all obstructions vanish)."""
    return all(o.polynomial.evaluate(values) == 0 for o in report.obstructions)
