# ---- File: forms/differential.py ----

"""The differential of forms on m, evaluated directly and through the product rule.

Sign convention: for [m_p, m_q]_m = sum_r c^r_pq m_r (p < q),
    d e^r = sum_{p<q} c^r_pq e^p ^ e^q,
and in general
    dw(u_0..u_k) = sum_{a<b} (-1)^(a+b+1) w([u_a, u_b]_m, u_0..^a..^b..u_k).
Both code paths below implement exactly this operator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Tuple

from algebra.scalars import Scalar
from forms.exterior import Form, Indices, _accumulate, wedge
from lie.space import HomogeneousSpace


def _by_target(space: HomogeneousSpace) -> Dict[int, List[Tuple[int, int, Fraction]]]:
    """r -> [(p, q, c^r_pq)] from the m-projected bracket table."""
    key = "bracket_by_target"
    if key not in space.cache:
        table: Dict[int, List[Tuple[int, int, Fraction]]] = {}
        for (p, q), coords in sorted(space.bracket_table.items()):
            for r, c in sorted(coords.items()):
                table.setdefault(r, []).append((p, q, c))
        space.cache[key] = table
    return space.cache[key]


def d_form(space: HomogeneousSpace, w: Form) -> Form:
    """Evaluate the differential term by term on basis k+1-vectors."""
    by_target = _by_target(space)
    out: Dict[Indices, Scalar] = {}
    for key, value in w.coeffs.items():
        for s, r in enumerate(key):
            rest = key[:s] + key[s + 1:]
            rest_set = set(rest)
            for p, q, c in by_target.get(r, ()):
                if p in rest_set or q in rest_set:
                    continue
                target = tuple(sorted(rest + (p, q)))
                a, b = target.index(p), target.index(q)
                # w(e_r, e_rest) = (-1)^s for w = e^key
                sign = -1 if (a + b + 1 + s) % 2 else 1
                _accumulate(out, target, value * (sign * c))  # type: ignore[operator]
    return Form._raw(w.dim, w.degree + 1, out)


def d_basis_oneform(space: HomogeneousSpace, index: int) -> Form:
    return d_form(space, Form.basis_oneform(space.dim_m, index))


def _basis_differentials(space: HomogeneousSpace) -> List[Form]:
    key = "d_basis_oneforms"
    if key not in space.cache:
        space.cache[key] = [d_basis_oneform(space, i) for i in range(space.dim_m)]
    return space.cache[key]


def d_product_rule(space: HomogeneousSpace, w: Form) -> Form:
    """d through the Leibniz rule over each wedge monomial, using d of basis 1-forms."""
    dim = space.dim_m
    d_basis = _basis_differentials(space)
    result = Form.zero(dim, w.degree + 1)
    for key, value in w.coeffs.items():
        for s, r in enumerate(key):
            prefix = Form.monomial(dim, key[:s], value)
            suffix = Form.monomial(dim, key[s + 1:])
            term = wedge(wedge(prefix, d_basis[r]), suffix)
            result = result + (term if s % 2 == 0 else -term)
    return result
