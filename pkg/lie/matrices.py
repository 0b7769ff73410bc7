# ---- File: lie/matrices.py ----

"""Structure constants and trace forms from explicit matrix representations.

Complex and quaternionic matrices are realified into rational real blocks
(a + bi -> 2x2, quaternions -> 4x4 left multiplication), so everything below
works with sparse rational matrices only.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple, Union

from algebra.linalg import SparseEchelon
from errors import StructuralError
from lie.algebra import BiInvariantForm, GVector, LieAlgebra

logger = logging.getLogger(__name__)

RealMatrix = Dict[Tuple[int, int], Fraction]
Num = Union[int, Fraction]


# --- Realification ---


def realify_complex(entries: Mapping[Tuple[int, int], Tuple[Num, Num]]) -> RealMatrix:
    """(re, im) entries of a complex matrix as 2x2 real blocks."""
    out: RealMatrix = {}
    for (r, c), (re, im) in entries.items():
        block = {(0, 0): re, (0, 1): -im, (1, 0): im, (1, 1): re}
        for (dr, dc), v in block.items():
            if v:
                out[(2 * r + dr, 2 * c + dc)] = Fraction(v)
    return out


def realify_quaternion(entries: Mapping[Tuple[int, int], Tuple[Num, Num, Num, Num]]) -> RealMatrix:
    """(a, b, c, d) = a + bi + cj + dk entries as 4x4 left-multiplication blocks."""
    out: RealMatrix = {}
    for (r, col), (a, b, c, d) in entries.items():
        block = (
            (a, -b, -c, -d),
            (b, a, -d, c),
            (c, d, a, -b),
            (d, -c, b, a),
        )
        for dr in range(4):
            for dc in range(4):
                v = block[dr][dc]
                if v:
                    out[(4 * r + dr, 4 * col + dc)] = Fraction(v)
    return out


# --- Sparse matrix arithmetic ---


def mat_mul(a: RealMatrix, b: RealMatrix) -> RealMatrix:
    rows_b: Dict[int, List[Tuple[int, Fraction]]] = {}
    for (r, c), v in b.items():
        rows_b.setdefault(r, []).append((c, v))
    out: RealMatrix = {}
    for (r, k), v in a.items():
        for c, w in rows_b.get(k, ()):
            value = out.get((r, c), 0) + v * w
            if value:
                out[(r, c)] = value
            else:
                out.pop((r, c), None)
    return out


def mat_add(a: RealMatrix, b: RealMatrix, factor: Num = 1) -> RealMatrix:
    out = dict(a)
    for key, v in b.items():
        value = out.get(key, 0) + factor * v
        if value:
            out[key] = value
        else:
            out.pop(key, None)
    return out


def commutator(a: RealMatrix, b: RealMatrix) -> RealMatrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), -1)


def trace(a: RealMatrix) -> Fraction:
    return sum((v for (r, c), v in a.items() if r == c), Fraction(0))


def combine(terms: Sequence[Tuple[Num, RealMatrix]]) -> RealMatrix:
    out: RealMatrix = {}
    for factor, m in terms:
        out = mat_add(out, m, factor)
    return out


# --- Coordinates ---


class MatrixCoordinates:
    """Coordinates of matrices in the span of a fixed list of basis matrices."""

    def __init__(self, basis: Sequence[RealMatrix]):
        self.size = len(basis)
        self._echelon = SparseEchelon()
        for i, m in enumerate(basis):
            if self._echelon.insert(m, label=i) is not None:
                raise StructuralError(f"Basis matrix {i} is a combination of the previous ones")

    def coordinates(self, m: RealMatrix) -> GVector:
        residual, combo = self._echelon.reduce(m, {})
        if residual:
            raise StructuralError("Matrix lies outside the span of the basis", details={"residual_entries": len(residual)})
        return {int(k): -v for k, v in combo.items() if v}  # type: ignore[call-overload]


def structure_constants_from_matrices(labels: Sequence[str], matrices: Sequence[RealMatrix]) -> LieAlgebra:
    if len(labels) != len(matrices):
        raise StructuralError(f"{len(labels)} labels for {len(matrices)} matrices")
    coords = MatrixCoordinates(matrices)
    triples = []
    for i in range(len(matrices)):
        for j in range(i + 1, len(matrices)):
            br = commutator(matrices[i], matrices[j])
            if br:
                try:
                    triples.append((i, j, coords.coordinates(br)))
                except StructuralError as exc:
                    raise StructuralError(
                        f"[{labels[i]}, {labels[j]}] leaves the span of the matrices",
                        details={"pair": [labels[i], labels[j]]},
                    ) from exc
    algebra = LieAlgebra.from_triples(labels, triples)
    logger.debug(f"Derived {len(triples)} nonzero brackets from {len(matrices)} matrices")
    return algebra


def trace_form(matrices: Sequence[RealMatrix], scale: Fraction) -> BiInvariantForm:
    """Q(x, y) = scale * tr(xy) on the given basis."""
    n = len(matrices)
    gram = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            value = scale * trace(mat_mul(matrices[i], matrices[j]))
            gram[i][j] = gram[j][i] = value
    return BiInvariantForm(tuple(tuple(r) for r in gram))


def negative_half_trace(matrices: Sequence[RealMatrix], realification: int) -> BiInvariantForm:
    """-1/2 Re tr of the original complex/quaternionic matrices."""
    return trace_form(matrices, Fraction(-1, 2 * realification))
