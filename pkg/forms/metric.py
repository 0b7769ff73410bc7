# ---- File: forms/metric.py ----

"""Invariant metrics on m and the inner products they induce on forms."""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from algebra.linalg import ScalarMatrix, determinant, inverse, positive_definite_witness
from algebra.scalars import Number, RatFunc, Scalar, is_zero, simplify
from errors import StructuralError, ValidationFailure
from forms.exterior import Form
from lie.space import HomogeneousSpace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MetricOnM:
    gram: ScalarMatrix
    parameters: Tuple[str, ...] = ()
    _cache: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.gram.is_symmetric():
            raise ValidationFailure("Metric Gram matrix is not symmetric", code="metric_not_symmetric")

    @property
    def dim(self) -> int:
        return self.gram.rows

    @property
    def is_parametric(self) -> bool:
        return self.gram.is_parametric

    @property
    def inverse_gram(self) -> ScalarMatrix:
        if "inverse" not in self._cache:
            self._cache["inverse"] = inverse(self.gram)
        return self._cache["inverse"]

    def specialize(self, values: Mapping[str, Number]) -> "MetricOnM":
        remaining = tuple(p for p in self.parameters if p not in values)
        try:
            gram = self.gram.specialize(values)
        except ZeroDivisionError as exc:
            raise ValidationFailure(
                "Metric is undefined at these parameter values",
                code="metric_not_positive",
                details={"sample": {k: str(v) for k, v in values.items()}, "reason": str(exc)},
            ) from exc
        return MetricOnM(gram, remaining)

    def scaled(self, factor: Fraction) -> "MetricOnM":
        return MetricOnM(self.gram.map(lambda x: x * factor), self.parameters)  # type: ignore[operator]


def metric_from_space(space: HomogeneousSpace, values: Optional[Mapping[str, Number]] = None) -> MetricOnM:
    """The space's declared metric (block weights times Q, or the full Gram), optionally specialized."""
    assignment = space.spec.metric
    n = space.dim_m
    gram_q = space.split.gram_m
    if assignment is None:
        metric = MetricOnM(gram_q, ())
    elif assignment.gram is not None:
        if len(assignment.gram) != n or any(len(r) != n for r in assignment.gram):
            raise StructuralError(f"Metric Gram must be {n}x{n}")
        metric = MetricOnM(ScalarMatrix(n, n, assignment.gram), space.parameters)
    else:
        weights = assignment.weights or {}
        missing = [b.name for b in space.blocks if b.name not in weights]
        if missing:
            raise StructuralError(f"No metric weight for blocks {missing}")
        rows: List[List[Scalar]] = []
        for i in range(n):
            wi = weights[space.block_of(i).name]
            row: List[Scalar] = []
            for j in range(n):
                qij = gram_q[i, j]
                row.append(simplify(wi * qij) if not is_zero(qij) else Fraction(0))  # type: ignore[operator,arg-type]
            rows.append(row)
        metric = MetricOnM(ScalarMatrix.from_rows(rows, cols=n), space.parameters)
    if values:
        metric = metric.specialize(values)
    return metric


def block_metric(space: HomogeneousSpace, weights: Mapping[str, Fraction]) -> MetricOnM:
    """weights[block] * Q on each block; any positive weights give an admissible metric."""
    n = space.dim_m
    gram_q = space.split.gram_m
    rows = [[weights[space.block_of(i).name] * gram_q[i, j] for j in range(n)] for i in range(n)]  # type: ignore[operator]
    return MetricOnM(ScalarMatrix.from_rows(rows, cols=n))


def random_block_metrics(space: HomogeneousSpace, count: int, seed: int) -> List[MetricOnM]:
    """Deterministic random positive rational block weights."""
    rng = random.Random(seed)
    metrics = []
    for _ in range(count):
        weights = {b.name: Fraction(rng.randint(1, 12), rng.randint(1, 7)) for b in space.blocks}
        metrics.append(block_metric(space, weights))
    return metrics


def validate_metric(space: HomogeneousSpace, metric: MetricOnM, samples: Sequence[Mapping[str, Fraction]] = ()) -> None:
    """Positive definiteness (at samples when parametric) and g-skewness of isotropy operators."""
    if metric.dim != space.dim_m:
        raise StructuralError(f"Metric of dimension {metric.dim} on m of dimension {space.dim_m}")
    points: List[Mapping[str, Fraction]] = list(samples)
    if metric.is_parametric and not points:
        points = [{p: Fraction(1) for p in metric.parameters}]
    numeric = [metric.specialize(pt) for pt in points] if metric.is_parametric else [metric]
    for pt, m in zip(points or [{}], numeric):
        bad = positive_definite_witness(m.gram)
        if bad is not None:
            raise ValidationFailure(
                "Metric is not positive definite",
                code="metric_not_positive",
                details={"sample": {k: str(v) for k, v in pt.items()}, "pivot_index": bad},
            )
        _check_skew(space, m)


def _check_skew(space: HomogeneousSpace, metric: MetricOnM) -> None:
    g = metric.gram
    n = space.dim_m
    for hi, cols in enumerate(space.isotropy_generators()):
        for i in range(n):
            for j in range(i, n):
                # g(A m_i, m_j) + g(m_i, A m_j)
                value = sum((c * g[r, j] for r, c in cols[i].items()), Fraction(0)) + sum(
                    (c * g[i, r] for r, c in cols[j].items()), Fraction(0)
                )
                if value:
                    raise ValidationFailure(
                        "Metric is not invariant under the isotropy action",
                        code="metric_not_invariant",
                        details={"h_index": hi, "m_indices": [i, j], "value": str(value)},
                    )


# --- Inner products on forms ---


def _minor(ginv: ScalarMatrix, rows: Tuple[int, ...], cols: Tuple[int, ...]) -> Scalar:
    return determinant(ginv.submatrix(rows, cols))


def inner_product(a: Form, b: Form, g: MetricOnM) -> Scalar:
    """<a, b>_g with the degree-k Gram given by k x k minors of the inverse Gram."""
    if a.degree != b.degree:
        raise StructuralError(f"Inner product of forms of degrees {a.degree} and {b.degree}")
    if a.dim != g.dim or b.dim != g.dim:
        raise StructuralError("Forms and metric live on different spaces")
    ginv = g.inverse_gram
    total: Scalar = Fraction(0)
    if ginv.is_diagonal():
        diag = [ginv[i, i] for i in range(g.dim)]
        for key, va in a.coeffs.items():
            vb = b.coeffs.get(key)
            if vb is None:
                continue
            weight: Scalar = Fraction(1)
            for i in key:
                weight = weight * diag[i]  # type: ignore[operator]
            total = total + va * vb * weight  # type: ignore[operator]
    else:
        for (ka, va), (kb, vb) in product(a.coeffs.items(), b.coeffs.items()):
            minor = _minor(ginv, ka, kb)
            if not is_zero(minor):
                total = total + va * vb * minor  # type: ignore[operator]
    return simplify(total) if isinstance(total, RatFunc) else total
