# ---- File: algebra/linalg.py ----

"""Exact linear algebra over Q and over rational functions in the parameters.

Numeric matrices go through Gauss-Jordan elimination on Fractions. Parametric
matrices have their rows cleared of denominators and are eliminated
fraction-free (Bareiss); the pivots met on the way are returned so callers
can report where a specialization may change the rank.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Hashable, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.polynomial import Poly
from algebra.scalars import Number, RatFunc, Scalar, is_parametric, is_zero, simplify, specialize
from errors import StructuralError

logger = logging.getLogger(__name__)

Vector = Tuple[Scalar, ...]


@dataclass(frozen=True)
class ScalarMatrix:
    rows: int
    cols: int
    entries: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise StructuralError(f"Matrix entries do not match the declared shape {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Union[Scalar, int]]], cols: Optional[int] = None) -> "ScalarMatrix":
        data = tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in r) for r in rows)
        width = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), width, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ScalarMatrix":
        return cls(rows, cols, tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "ScalarMatrix":
        return cls(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    def __getitem__(self, index: Tuple[int, int]) -> Scalar:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def __matmul__(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise StructuralError(f"Cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        out = []
        for r in self.entries:
            out.append(tuple(_dot(r, other.column(j)) for j in range(other.cols)))
        return ScalarMatrix(self.rows, other.cols, tuple(out))

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        if len(vector) != self.cols:
            raise StructuralError(f"Vector of length {len(vector)} does not match {self.cols} columns")
        return tuple(_dot(r, vector) for r in self.entries)

    @property
    def is_parametric(self) -> bool:
        return any(is_parametric(x) for r in self.entries for x in r)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def is_diagonal(self) -> bool:
        return self.is_square and all(
            is_zero(self.entries[i][j]) for i in range(self.rows) for j in range(self.cols) if i != j
        )

    def map(self, fn: Callable[[Scalar], Scalar]) -> "ScalarMatrix":
        return ScalarMatrix(self.rows, self.cols, tuple(tuple(fn(x) for x in r) for r in self.entries))

    def specialize(self, values: Mapping[str, Number]) -> "ScalarMatrix":
        return self.map(lambda x: specialize(x, values))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ScalarMatrix":
        return ScalarMatrix(len(rows), len(cols), tuple(tuple(self.entries[i][j] for j in cols) for i in rows))


def _dot(a: Sequence[Scalar], b: Sequence[Scalar]) -> Scalar:
    total: Scalar = Fraction(0)
    for x, y in zip(a, b):
        if not is_zero(x) and not is_zero(y):
            total = total + x * y  # type: ignore[operator]
    return simplify(total) if isinstance(total, RatFunc) else total


@dataclass(frozen=True)
class NullspaceResult:
    basis: Tuple[Vector, ...]
    pivots: Tuple[Poly, ...]
    rank: int
    pivot_columns: Tuple[int, ...]


# --- Numeric elimination ---


def rref_rational(rows: Sequence[Sequence[Fraction]], cols: int) -> Tuple[List[List[Fraction]], List[int]]:
    """Reduced row echelon form over Q; zero rows are dropped."""
    m = [list(r) for r in rows]
    pivot_cols: List[int] = []
    r = 0
    for c in range(cols):
        sel = next((i for i in range(r, len(m)) if m[i][c]), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivot_cols


def _as_fraction(x: Scalar) -> Fraction:
    if isinstance(x, RatFunc):
        value = x.as_fraction()
        if value is None:
            raise StructuralError(f"Expected a rational entry, got {x}")
        return value
    return Fraction(x)


def _numeric_nullspace(matrix: ScalarMatrix) -> NullspaceResult:
    rows = [[_as_fraction(x) for x in r] for r in matrix.entries]
    reduced, pivot_cols = rref_rational(rows, matrix.cols)
    free = [c for c in range(matrix.cols) if c not in pivot_cols]
    basis = []
    for f in free:
        vec = [Fraction(0)] * matrix.cols
        vec[f] = Fraction(1)
        for row, pc in zip(reduced, pivot_cols):
            vec[pc] = -row[f]
        basis.append(tuple(vec))
    return NullspaceResult(tuple(basis), (), len(pivot_cols), tuple(pivot_cols))


# --- Parametric elimination ---


def _parameters_of(matrix: ScalarMatrix) -> Tuple[str, ...]:
    for r in matrix.entries:
        for x in r:
            if isinstance(x, RatFunc):
                return x.parameters
    return ()


def _cleared_rows(matrix: ScalarMatrix, parameters: Tuple[str, ...]) -> Tuple[List[List[Poly]], List[Poly]]:
    """Rows multiplied by the product of their entry denominators, and those denominators."""
    out: List[List[Poly]] = []
    cleared: List[Poly] = []
    for r in matrix.entries:
        dens: List[Poly] = []
        for x in r:
            if isinstance(x, RatFunc) and not x.den.is_one and x.den not in dens:
                dens.append(x.den)
        cleared.extend(dens)
        common = Poly.one(parameters)
        for d in dens:
            common = common * d
        row = []
        for x in r:
            if isinstance(x, RatFunc):
                row.append((x.num * common).exact_divide(x.den))
            else:
                row.append(Poly.constant(parameters, x) * common)
        out.append(row)
    return out, cleared


def bareiss_echelon(rows: List[List[Poly]], cols: int) -> Tuple[List[List[Poly]], List[int], List[Poly]]:
    """Fraction-free row echelon form; returns (echelon rows, pivot columns, pivots)."""
    m = [list(r) for r in rows]
    params = m[0][0].parameters if m and cols else ()
    prev = Poly.one(params)
    pivot_cols: List[int] = []
    pivots: List[Poly] = []
    r = 0
    for c in range(cols):
        if r >= len(m):
            break
        sel = next((i for i in range(r, len(m)) if not m[i][c].is_zero), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            lead = m[i][c]
            for j in range(c + 1, cols):
                value = piv * m[i][j] - lead * m[r][j]
                m[i][j] = value if prev.is_one else value.exact_divide(prev)
            m[i][c] = Poly.zero(params)
        prev = piv
        pivot_cols.append(c)
        pivots.append(piv)
        r += 1
    return m[:r], pivot_cols, pivots


def _parametric_nullspace(matrix: ScalarMatrix) -> NullspaceResult:
    params = _parameters_of(matrix)
    rows, denominators = _cleared_rows(matrix, params)
    echelon, pivot_cols, pivots = bareiss_echelon(rows, matrix.cols)
    free = [c for c in range(matrix.cols) if c not in pivot_cols]
    basis = []
    for f in free:
        vec: List[RatFunc] = [RatFunc.constant(params, 0) for _ in range(matrix.cols)]
        vec[f] = RatFunc.constant(params, 1)
        for idx in reversed(range(len(pivot_cols))):
            pc = pivot_cols[idx]
            acc = RatFunc.constant(params, 0)
            for j in range(pc + 1, matrix.cols):
                if not echelon[idx][j].is_zero and not vec[j].is_zero:
                    acc = acc + vec[j] * RatFunc(echelon[idx][j])
            vec[pc] = -acc / RatFunc(echelon[idx][pc])
        basis.append(tuple(simplify(x) for x in vec))
    # Entries are undefined where a cleared denominator vanishes
    return NullspaceResult(tuple(basis), normalize_pivots([*pivots, *denominators]), len(pivot_cols), tuple(pivot_cols))


def normalize_pivots(pivots: Sequence[Poly]) -> Tuple[Poly, ...]:
    """Distinct non-unit factors (content and monomials stripped), sorted by text."""
    seen: Dict[Poly, None] = {}
    for p in pivots:
        if p.is_constant:
            continue
        q = p.normalized_factor()
        if not q.is_constant:
            seen.setdefault(q, None)
    return tuple(sorted(seen, key=str))


def nullspace(matrix: ScalarMatrix) -> NullspaceResult:
    """Kernel basis of a matrix with Fraction or RatFunc entries."""
    if matrix.cols == 0:
        return NullspaceResult((), (), 0, ())
    if matrix.rows == 0:
        basis = tuple(ScalarMatrix.identity(matrix.cols).entries)
        return NullspaceResult(basis, (), 0, ())
    if matrix.is_parametric:
        return _parametric_nullspace(matrix)
    return _numeric_nullspace(matrix)


def rank(matrix: ScalarMatrix) -> int:
    return nullspace(matrix).rank


# --- Determinants, inverses and definiteness ---


def determinant(matrix: ScalarMatrix) -> Scalar:
    if not matrix.is_square:
        raise StructuralError("Determinant of a non-square matrix")
    n = matrix.rows
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in matrix.entries]
    det: Scalar = Fraction(1)
    for c in range(n):
        sel = next((i for i in range(c, n) if not is_zero(m[i][c])), None)
        if sel is None:
            return Fraction(0)
        if sel != c:
            m[c], m[sel] = m[sel], m[c]
            det = -det
        piv = m[c][c]
        det = det * piv  # type: ignore[operator]
        for i in range(c + 1, n):
            if not is_zero(m[i][c]):
                factor = m[i][c] / piv  # type: ignore[operator]
                m[i] = [x - factor * y for x, y in zip(m[i], m[c])]  # type: ignore[operator]
    return simplify(det) if isinstance(det, RatFunc) else det


def inverse(matrix: ScalarMatrix) -> ScalarMatrix:
    if not matrix.is_square:
        raise StructuralError("Inverse of a non-square matrix")
    n = matrix.rows
    m = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(matrix.entries)]
    for c in range(n):
        sel = next((i for i in range(c, n) if not is_zero(m[i][c])), None)
        if sel is None:
            raise StructuralError("Matrix is singular", details={"column": c})
        m[c], m[sel] = m[sel], m[c]
        piv = m[c][c]
        m[c] = [x / piv for x in m[c]]  # type: ignore[operator]
        for i in range(n):
            if i != c and not is_zero(m[i][c]):
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[c])]  # type: ignore[operator]
    out = tuple(tuple(simplify(x) if isinstance(x, RatFunc) else x for x in r[n:]) for r in m)
    return ScalarMatrix(n, n, out)


def positive_definite_witness(matrix: ScalarMatrix) -> Optional[int]:
    """None if a rational symmetric matrix is positive definite, else the failing pivot index."""
    if matrix.is_parametric:
        raise StructuralError("Definiteness is only decided for rational matrices")
    n = matrix.rows
    m = [[_as_fraction(x) for x in r] for r in matrix.entries]
    for k in range(n):
        if m[k][k] <= 0:
            return k
        for i in range(k + 1, n):
            if m[i][k]:
                factor = m[i][k] / m[k][k]
                m[i] = [x - factor * y for x, y in zip(m[i], m[k])]
    return None


# --- Sparse incremental echelon ---

SparseVector = Dict[Hashable, Fraction]


class SparseEchelon:
    """Incremental echelon form of sparse rational vectors with combination tracking.

    Each stored row has leading coefficient 1 at its pivot key, the smallest
    key of the row. Inserting a vector that reduces to zero returns the
    dependency it satisfies as {label: coefficient} summing to zero.
    """

    def __init__(self) -> None:
        self.rows: Dict[Hashable, Tuple[SparseVector, Dict[Hashable, Fraction]]] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, vector: Mapping[Hashable, Fraction], combination: Optional[Mapping[Hashable, Fraction]] = None) -> Tuple[SparseVector, Dict[Hashable, Fraction]]:
        residual: SparseVector = {k: Fraction(v) for k, v in vector.items() if v}
        combo: Dict[Hashable, Fraction] = dict(combination or {})
        while True:
            hits = [k for k in residual if k in self.rows]
            if not hits:
                return residual, combo
            key = min(hits)  # type: ignore[type-var]
            factor = residual[key]
            row, row_combo = self.rows[key]
            for k, v in row.items():
                value = residual.get(k, 0) - factor * v
                if value:
                    residual[k] = value
                else:
                    residual.pop(k, None)
            for k, v in row_combo.items():
                value = combo.get(k, 0) - factor * v
                if value:
                    combo[k] = value
                else:
                    combo.pop(k, None)

    def insert(self, vector: Mapping[Hashable, Fraction], label: Hashable = None) -> Optional[Dict[Hashable, Fraction]]:
        start = {label: Fraction(1)} if label is not None else {}
        residual, combo = self.reduce(vector, start)
        if not residual:
            return combo
        key = min(residual)  # type: ignore[type-var]
        inv = 1 / residual[key]
        self.rows[key] = ({k: v * inv for k, v in residual.items()}, {k: v * inv for k, v in combo.items()})
        return None

    def rref(self) -> List[Tuple[Hashable, SparseVector]]:
        """Fully reduced rows sorted by pivot key."""
        keys = sorted(self.rows)  # type: ignore[type-var]
        reduced: Dict[Hashable, SparseVector] = {k: dict(self.rows[k][0]) for k in keys}
        for key in reversed(keys):
            row = reduced[key]
            for other in keys:
                if other == key:
                    continue
                factor = reduced[other].get(key)
                if factor:
                    target = reduced[other]
                    for k, v in row.items():
                        value = target.get(k, 0) - factor * v
                        if value:
                            target[k] = value
                        else:
                            target.pop(k, None)
        return [(k, reduced[k]) for k in keys]


def sparse_kernel(columns: Sequence[Mapping[Hashable, Fraction]]) -> List[Dict[int, Fraction]]:
    """Basis of {x : sum_j x_j columns[j] = 0} by incremental dependency detection."""
    echelon = SparseEchelon()
    kernel: List[Dict[int, Fraction]] = []
    for j, col in enumerate(columns):
        dependency = echelon.insert(col, label=j)
        if dependency is not None:
            kernel.append({int(k): v for k, v in dependency.items()})  # type: ignore[call-overload]
    return kernel
