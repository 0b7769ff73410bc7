# ---- File: catalog/spaces.py ----

"""Bundled homogeneous spaces, generated from explicit matrix representations.

Complex matrices are given by {(row, col): (re, im)} and quaternionic ones by
{(row, col): (a, b, c, d)}; both are realified so structure constants and the
bi-invariant form come out exactly rational. h and m are listed as matrices
and converted to coordinates in the chosen basis of g.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from algebra.expressions import parse_scalar
from errors import StructuralError
from lie.algebra import BiInvariantForm, LieAlgebra
from lie.matrices import (
    MatrixCoordinates,
    RealMatrix,
    combine,
    negative_half_trace,
    realify_complex,
    realify_quaternion,
    structure_constants_from_matrices,
)
from lie.space import Block, HomogeneousSpaceSpec, MetricAssignment

logger = logging.getLogger(__name__)

Triple = Tuple[int, int, int]


# --- Matrix algebras ---


def _c(entries: Mapping[Tuple[int, int], Tuple[int, int]]) -> RealMatrix:
    return realify_complex(entries)


def _su3() -> Tuple[Tuple[str, ...], List[RealMatrix]]:
    """E1 = E12 - E21, E2 = -E13 + E31, E3 = E23 - E32, F_i = i(...), H1 = i(E11 - E22), H2 = i(E33 - E11)."""
    labels = ("E1", "E2", "E3", "F1", "F2", "F3", "H1", "H2")
    matrices = [
        _c({(0, 1): (1, 0), (1, 0): (-1, 0)}),
        _c({(0, 2): (-1, 0), (2, 0): (1, 0)}),
        _c({(1, 2): (1, 0), (2, 1): (-1, 0)}),
        _c({(0, 1): (0, 1), (1, 0): (0, 1)}),
        _c({(0, 2): (0, 1), (2, 0): (0, 1)}),
        _c({(1, 2): (0, 1), (2, 1): (0, 1)}),
        _c({(0, 0): (0, 1), (1, 1): (0, -1)}),
        _c({(0, 0): (0, -1), (2, 2): (0, 1)}),
    ]
    return labels, matrices


def _algebra(labels: Sequence[str], matrices: Sequence[RealMatrix], realification: int) -> Tuple[LieAlgebra, BiInvariantForm, MatrixCoordinates]:
    algebra = structure_constants_from_matrices(labels, matrices)
    q = negative_half_trace(matrices, realification)
    return algebra, q, MatrixCoordinates(matrices)


def _dense(coords: MatrixCoordinates, m: RealMatrix) -> Tuple[Fraction, ...]:
    sparse = coords.coordinates(m)
    return tuple(sparse.get(i, Fraction(0)) for i in range(coords.size))


def _unit(n: int, i: int, value: int = 1) -> Tuple[Fraction, ...]:
    return tuple(Fraction(value if j == i else 0) for j in range(n))


def _weights(spec: Mapping[str, str], parameters: Sequence[str]) -> MetricAssignment:
    return MetricAssignment(weights={name: parse_scalar(text, parameters) for name, text in spec.items()})


def _samples(parameters: Sequence[str], points: Sequence[Sequence[str]]) -> Tuple[Dict[str, Fraction], ...]:
    return tuple({p: Fraction(v) for p, v in zip(parameters, point)} for point in points)


# --- su(3) quotients ---


def default_epsilon(k: Triple) -> Triple:
    """Coprime r >= 0 (min 0) with eps = r1 H1 + r2 H2 + r3 H3 orthogonal to i*diag(k)."""
    k1, k2, k3 = k
    d = (k2 - k3, k3 - k1, k1 - k2)
    r = [d[0] + d[2], d[2], 0]
    low = min(r)
    r = [x - low for x in r]
    g = 0
    for x in r:
        g = gcd(g, x)
    if g == 0:
        raise StructuralError(f"No circle direction complements k = {k}")
    return tuple(x // g for x in r)  # type: ignore[return-value]


def aloff_wallach(k1: int, k2: int, k3: int, eps: Optional[Tuple[int, int, int]] = None) -> HomogeneousSpaceSpec:
    """SU(3)/S^1 with the circle i*diag(k1, k2, k3); m = V0 + V1 + V2 + V3 with V0 spanned by eps."""
    if k1 + k2 + k3 != 0 or not any((k1, k2, k3)):
        raise StructuralError(f"Circle weights must be nonzero and sum to zero, got {(k1, k2, k3)}")
    labels, matrices = _su3()
    algebra, q, _ = _algebra(labels, matrices, 2)
    r = default_epsilon((k1, k2, k3)) if eps is None else eps
    r1, r2, r3 = r
    n = len(labels)
    # i*diag(k) = -k2 H1 + k3 H2; sum r_i H_i = (r1 - r3) H1 + (r2 - r3) H2
    h = tuple(Fraction(-k2) if i == 6 else Fraction(k3) if i == 7 else Fraction(0) for i in range(n))
    epsilon = tuple(Fraction(r1 - r3) if i == 6 else Fraction(r2 - r3) if i == 7 else Fraction(0) for i in range(n))
    m_basis = (_unit(n, 0), _unit(n, 3), _unit(n, 1), _unit(n, 4), _unit(n, 2), _unit(n, 5), epsilon)
    s = tuple(2 * r[i] - r[(i + 1) % 3] - r[(i + 2) % 3] for i in range(3))
    params = ("t1", "t2", "t3")
    return HomogeneousSpaceSpec(
        name=f"aloff_wallach_{k1}_{k2}_{k3}".replace("-", "m"),
        algebra=algebra,
        q=q,
        h_basis=(h,),
        m_basis=m_basis,
        m_labels=("E1", "F1", "E2", "F2", "E3", "F3", "V0"),
        blocks=(Block("V0", (6,)), Block("V1", (0, 1)), Block("V2", (2, 3)), Block("V3", (4, 5))),
        metric=_weights({"V0": "1", "V1": "1/t1", "V2": "1/t2", "V3": "1/t3"}, params),
        parameters=params,
        samples=_samples(params, [("1", "1", "1"), ("1", "2", "3"), ("1/2", "3/2", "2")]),
        notes=(f"k = ({k1}, {k2}, {k3}), eps = r1 H1 + r2 H2 + r3 H3 with r = {tuple(r)}, s = {s}",),
    )


def flag_w6() -> HomogeneousSpaceSpec:
    """SU(3)/T^2 with the three root planes as blocks."""
    labels, matrices = _su3()
    algebra, q, _ = _algebra(labels, matrices, 2)
    n = len(labels)
    params = ("t1", "t2", "t3")
    return HomogeneousSpaceSpec(
        name="flag_w6",
        algebra=algebra,
        q=q,
        h_basis=(_unit(n, 6), _unit(n, 7)),
        m_basis=(_unit(n, 0), _unit(n, 3), _unit(n, 1), _unit(n, 4), _unit(n, 2), _unit(n, 5)),
        m_labels=("E1", "F1", "E2", "F2", "E3", "F3"),
        blocks=(Block("V1", (0, 1)), Block("V2", (2, 3)), Block("V3", (4, 5))),
        metric=_weights({"V1": "1/t1", "V2": "1/t2", "V3": "1/t3"}, params),
        parameters=params,
        samples=_samples(params, [("1", "1", "1"), ("1", "2", "3")]),
    )


def sphere5() -> HomogeneousSpaceSpec:
    """SU(3)/SU(2), a rational homology sphere."""
    labels, matrices = _su3()
    algebra, q, _ = _algebra(labels, matrices, 2)
    n = len(labels)
    v0 = tuple(Fraction(1) if i == 6 else Fraction(2) if i == 7 else Fraction(0) for i in range(n))
    return HomogeneousSpaceSpec(
        name="sphere5",
        algebra=algebra,
        q=q,
        h_basis=(_unit(n, 0), _unit(n, 3), _unit(n, 6)),
        m_basis=(_unit(n, 1), _unit(n, 4), _unit(n, 2), _unit(n, 5), v0),
        m_labels=("E2", "F2", "E3", "F3", "V0"),
        blocks=(Block("W", (0, 1, 2, 3)), Block("V0", (4,))),
        metric=_weights({"W": "1", "V0": "1"}, ()),
    )


# --- sp(2) / sp(1) + u(1) ---


def cp3() -> HomogeneousSpaceSpec:
    """CP^3 = Sp(2)/Sp(1)U(1); quaternionic 2x2 matrices, m = V (2-dim) + W (4-dim)."""

    def quat(entries: Mapping[Tuple[int, int], Tuple[int, int, int, int]]) -> RealMatrix:
        return realify_quaternion(entries)

    def sym(unit: Tuple[int, int, int, int]) -> RealMatrix:
        return quat({(0, 1): unit, (1, 0): unit})

    i, j, k = (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)
    labels = ("I1", "J1", "K1", "I2", "J2", "K2", "Y", "Y1", "Y2", "Y3")
    matrices = [
        quat({(0, 0): i}),
        quat({(0, 0): j}),
        quat({(0, 0): k}),
        quat({(1, 1): i}),
        quat({(1, 1): j}),
        quat({(1, 1): k}),
        quat({(0, 1): (1, 0, 0, 0), (1, 0): (-1, 0, 0, 0)}),
        sym(i),
        sym(j),
        sym(k),
    ]
    algebra, q, _ = _algebra(labels, matrices, 4)
    n = len(labels)
    params = ("t",)
    return HomogeneousSpaceSpec(
        name="cp3",
        algebra=algebra,
        q=q,
        h_basis=tuple(_unit(n, idx) for idx in range(4)),
        m_basis=tuple(_unit(n, idx) for idx in range(4, 10)),
        m_labels=("e2", "e3", "Y", "Y1", "Y2", "Y3"),
        blocks=(Block("V", (0, 1)), Block("W", (2, 3, 4, 5))),
        metric=_weights({"V": "2/t", "W": "1"}, params),
        parameters=params,
        samples=_samples(params, [("1",), ("1/2",), ("2",)]),
        notes=("t = 1 is the symmetric (Fubini-Study) metric",),
    )


# --- su(5) / sp(2) + u(1) ---


def _su5_basis() -> Tuple[Tuple[str, ...], List[RealMatrix]]:
    labels: List[str] = []
    matrices: List[RealMatrix] = []
    for a in range(4):
        labels.append(f"D{a}")
        matrices.append(_c({(a, a): (0, 1), (a + 1, a + 1): (0, -1)}))
    for a in range(5):
        for b in range(a + 1, 5):
            labels.append(f"X{a}{b}")
            matrices.append(_c({(a, b): (1, 0), (b, a): (-1, 0)}))
            labels.append(f"Y{a}{b}")
            matrices.append(_c({(a, b): (0, 1), (b, a): (0, 1)}))
    return tuple(labels), matrices


def berger13() -> HomogeneousSpaceSpec:
    """B^13 = SU(5)/Sp(2)U(1), with Sp(2) in SU(4) preserving J = [[0, I], [-I, 0]]."""
    labels, matrices = _su5_basis()
    algebra, q, coords = _algebra(labels, matrices, 2)

    def x(a: int, b: int) -> RealMatrix:
        return _c({(a, b): (1, 0), (b, a): (-1, 0)})

    def y(a: int, b: int) -> RealMatrix:
        return _c({(a, b): (0, 1), (b, a): (0, 1)})

    h = [
        _c({(0, 0): (0, 1), (2, 2): (0, -1)}),
        _c({(1, 1): (0, 1), (3, 3): (0, -1)}),
        combine([(1, x(0, 1)), (1, x(2, 3))]),
        combine([(1, y(0, 1)), (-1, y(2, 3))]),
        x(0, 2),
        y(0, 2),
        x(1, 3),
        y(1, 3),
        combine([(1, x(0, 3)), (1, x(1, 2))]),
        combine([(1, y(0, 3)), (1, y(1, 2))]),
        _c({(0, 0): (0, 1), (1, 1): (0, 1), (2, 2): (0, 1), (3, 3): (0, 1), (4, 4): (0, -4)}),
    ]
    v = [
        _c({(0, 0): (0, 1), (1, 1): (0, -1), (2, 2): (0, 1), (3, 3): (0, -1)}),
        combine([(1, x(0, 1)), (-1, x(2, 3))]),
        combine([(1, y(0, 1)), (1, y(2, 3))]),
        combine([(1, x(0, 3)), (-1, x(1, 2))]),
        combine([(1, y(0, 3)), (-1, y(1, 2))]),
    ]
    w: List[RealMatrix] = []
    w_labels: List[str] = []
    for a in range(4):
        w.extend([x(a, 4), y(a, 4)])
        w_labels.extend([f"x{a}", f"y{a}"])
    params = ("t",)
    return HomogeneousSpaceSpec(
        name="berger13",
        algebra=algebra,
        q=q,
        h_basis=tuple(_dense(coords, m) for m in h),
        m_basis=tuple(_dense(coords, m) for m in v + w),
        m_labels=("v0", "v1", "v2", "v3", "v4", *w_labels),
        blocks=(Block("V", tuple(range(5))), Block("W", tuple(range(5, 13)))),
        metric=_weights({"V": "t", "W": "1"}, params),
        parameters=params,
        samples=_samples(params, [("1",), ("2",), ("1/3",)]),
    )


# --- Registry ---

CATALOG: Dict[str, Callable[[], HomogeneousSpaceSpec]] = {
    "aloff_wallach": lambda: aloff_wallach(-2, 1, 1),
    "aloff_wallach_1_2_m3": lambda: aloff_wallach(1, 2, -3),
    "aloff_wallach_1_m1_0": lambda: aloff_wallach(1, -1, 0),
    "flag_w6": flag_w6,
    "cp3": cp3,
    "berger13": berger13,
    "sphere5": sphere5,
}


def bundled_spec(name: str) -> HomogeneousSpaceSpec:
    key = name[:-5] if name.endswith(".json") else name
    if key not in CATALOG:
        raise StructuralError(f"No bundled space named '{name}'", details={"available": sorted(CATALOG)})
    spec = CATALOG[key]()
    logger.debug(f"Built bundled space '{key}'")
    return spec


def bundled_specs() -> Dict[str, HomogeneousSpaceSpec]:
    return {name: build() for name, build in CATALOG.items()}
