# ---- File: lie/algebra.py ----

"""Lie algebras given by structure constants, and bi-invariant forms on them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from algebra.linalg import ScalarMatrix, positive_definite_witness
from errors import StructuralError

logger = logging.getLogger(__name__)

# Sparse coordinate vector on the basis of g
GVector = Dict[int, Fraction]


def add_scaled(target: GVector, source: Mapping[int, Fraction], factor: Fraction) -> None:
    """target += factor * source, dropping entries that cancel."""
    if not factor:
        return
    for k, v in source.items():
        value = target.get(k, 0) + factor * v
        if value:
            target[k] = value
        else:
            target.pop(k, None)


def dense_to_sparse(vector: Sequence[Fraction]) -> GVector:
    return {i: Fraction(v) for i, v in enumerate(vector) if v}


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    witness: Optional[dict] = None


@dataclass(frozen=True)
class ValidationReport:
    checks: Tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.ok]


@dataclass(frozen=True)
class LieAlgebra:
    """Basis e_0..e_{n-1} with [e_i, e_j] stored for i < j only."""

    labels: Tuple[str, ...]
    brackets: Mapping[Tuple[int, int], Mapping[int, Fraction]]
    # Inconsistent antisymmetry data seen while loading, reported by validate_algebra
    conflicts: Tuple[dict, ...] = field(default=(), compare=False)

    @property
    def dim(self) -> int:
        return len(self.labels)

    @classmethod
    def from_triples(cls, labels: Sequence[str], triples: Iterable[Tuple[int, int, Mapping[int, Fraction]]]) -> "LieAlgebra":
        """Build from (i, j, {k: c}) triples; (j, i) entries are folded in with a sign flip."""
        n = len(labels)
        table: Dict[Tuple[int, int], GVector] = {}
        conflicts: List[dict] = []
        for i, j, vec in triples:
            for idx in (i, j, *vec.keys()):
                if not 0 <= idx < n:
                    raise StructuralError(f"Bracket index {idx} out of range for dimension {n}")
            clean = {k: Fraction(v) for k, v in vec.items() if v}
            if i == j:
                if clean:
                    conflicts.append({"pair": [i, j], "reason": "nonzero self-bracket"})
                continue
            key, sign = ((i, j), 1) if i < j else ((j, i), -1)
            signed = {k: sign * v for k, v in clean.items()}
            if key in table:
                if table[key] != signed:
                    conflicts.append({"pair": list(key), "reason": "antisymmetric entries disagree"})
                continue
            if signed:
                table[key] = signed
        return cls(tuple(labels), table, tuple(conflicts))

    def bracket_basis(self, i: int, j: int) -> GVector:
        if i == j:
            return {}
        if i < j:
            return dict(self.brackets.get((i, j), {}))
        return {k: -v for k, v in self.brackets.get((j, i), {}).items()}

    def bracket(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> GVector:
        out: GVector = {}
        for i, a in x.items():
            for j, b in y.items():
                if i != j:
                    add_scaled(out, self.bracket_basis(i, j), a * b)
        return out

    def ad_columns(self, i: int) -> List[GVector]:
        """Columns of ad(e_i): column j holds [e_i, e_j]."""
        return [self.bracket_basis(i, j) for j in range(self.dim)]

    def triples(self) -> List[Tuple[int, int, Dict[int, Fraction]]]:
        return [(i, j, dict(v)) for (i, j), v in sorted(self.brackets.items())]


def _jacobi_sum(a: LieAlgebra, i: int, j: int, k: int) -> GVector:
    total: GVector = {}
    for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
        inner = a.bracket_basis(x, y)
        add_scaled(total, a.bracket(inner, {z: Fraction(1)}), Fraction(1))
    return total


def validate_algebra(a: LieAlgebra) -> ValidationReport:
    checks: List[Check] = []
    if a.conflicts:
        checks.append(Check("antisymmetry", False, {"conflicts": list(a.conflicts)}))
    else:
        checks.append(Check("antisymmetry", True))
    failure: Optional[dict] = None
    for i, j, k in combinations(range(a.dim), 3):
        cyclic = _jacobi_sum(a, i, j, k)
        if cyclic:
            failure = {
                "triple": [a.labels[i], a.labels[j], a.labels[k]],
                "indices": [i, j, k],
                "cyclic_sum": {a.labels[m]: str(v) for m, v in sorted(cyclic.items())},
            }
            break
    checks.append(Check("jacobi", failure is None, failure))
    report = ValidationReport(tuple(checks))
    logger.debug(f"Validated Lie algebra of dimension {a.dim}: ok={report.ok}")
    return report


@dataclass(frozen=True)
class BiInvariantForm:
    gram: Tuple[Tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.gram)

    def pair(self, x: Mapping[int, Fraction], y: Mapping[int, Fraction]) -> Fraction:
        total = Fraction(0)
        for i, a in x.items():
            row = self.gram[i]
            for j, b in y.items():
                if row[j]:
                    total += a * b * row[j]
        return total

    def matrix(self) -> ScalarMatrix:
        return ScalarMatrix(self.dim, self.dim, self.gram)


def validate_q(a: LieAlgebra, q: BiInvariantForm) -> ValidationReport:
    n = a.dim
    if q.dim != n or any(len(r) != n for r in q.gram):
        return ValidationReport((Check("shape", False, {"expected": n, "rows": q.dim}),))
    checks: List[Check] = []

    asym = next(((i, j) for i in range(n) for j in range(i + 1, n) if q.gram[i][j] != q.gram[j][i]), None)
    checks.append(Check("symmetric", asym is None, None if asym is None else {"entry": list(asym)}))

    bad_pivot = positive_definite_witness(q.matrix()) if asym is None else None
    checks.append(Check("positive_definite", asym is None and bad_pivot is None,
                        None if bad_pivot is None else {"pivot_index": bad_pivot}))

    # Q([x,y],z) + Q(y,[x,z]) = 0 over basis triples
    witness: Optional[dict] = None
    for i in range(n):
        cols = a.ad_columns(i)
        if not any(cols):
            continue
        for j in range(n):
            for k in range(j, n):
                value = q.pair(cols[j], {k: Fraction(1)}) + q.pair({j: Fraction(1)}, cols[k])
                if value:
                    witness = {"triple": [a.labels[i], a.labels[j], a.labels[k]], "value": str(value)}
                    break
            if witness:
                break
        if witness:
            break
    checks.append(Check("ad_invariant", witness is None, witness))
    return ValidationReport(tuple(checks))
