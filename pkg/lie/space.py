# ---- File: lie/space.py ----

"""Homogeneous spaces G/H: the reductive split g = h + m and the isotropy action on m."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from algebra.linalg import ScalarMatrix, inverse, nullspace, rref_rational
from algebra.scalars import Scalar
from errors import StructuralError, ValidationFailure
from lie.algebra import (
    BiInvariantForm,
    GVector,
    LieAlgebra,
    dense_to_sparse,
    validate_algebra,
    validate_q,
)

logger = logging.getLogger(__name__)

MCoords = Dict[int, Fraction]


@dataclass(frozen=True)
class Block:
    name: str
    indices: Tuple[int, ...]


@dataclass(frozen=True)
class MetricAssignment:
    """Per-block weights (metric = weight * Q on the block) or a full Gram matrix on m."""

    weights: Optional[Mapping[str, Scalar]] = None
    gram: Optional[Tuple[Tuple[Scalar, ...], ...]] = None

    def __post_init__(self) -> None:
        if (self.weights is None) == (self.gram is None):
            raise StructuralError("A metric assignment needs exactly one of block weights or a Gram matrix")


@dataclass(frozen=True)
class HomogeneousSpaceSpec:
    name: str
    algebra: LieAlgebra
    q: BiInvariantForm
    h_basis: Tuple[Tuple[Fraction, ...], ...]
    m_basis: Optional[Tuple[Tuple[Fraction, ...], ...]] = None
    m_labels: Optional[Tuple[str, ...]] = None
    blocks: Tuple[Block, ...] = ()
    metric: Optional[MetricAssignment] = None
    parameters: Tuple[str, ...] = ()
    samples: Tuple[Mapping[str, Fraction], ...] = ()
    notes: Tuple[str, ...] = ()


@dataclass(frozen=True)
class ReductiveSplit:
    h_basis: Tuple[GVector, ...]
    m_basis: Tuple[GVector, ...]
    gram_h: ScalarMatrix
    gram_m: ScalarMatrix
    _h_covectors: Tuple[GVector, ...] = field(repr=False)
    _m_covectors: Tuple[GVector, ...] = field(repr=False)
    _gram_h_inv: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)
    _gram_m_inv: Tuple[Tuple[Fraction, ...], ...] = field(repr=False)

    @staticmethod
    def _solve(covectors: Sequence[GVector], gram_inv: Sequence[Sequence[Fraction]], x: Mapping[int, Fraction]) -> MCoords:
        pairings = [sum((c.get(i, 0) * v for i, v in x.items()), Fraction(0)) for c in covectors]
        out: MCoords = {}
        for r, row in enumerate(gram_inv):
            value = sum((a * b for a, b in zip(row, pairings) if a and b), Fraction(0))
            if value:
                out[r] = value
        return out

    def project_m(self, x: Mapping[int, Fraction]) -> MCoords:
        """Coordinates in m_basis of the Q-orthogonal projection of x onto m."""
        return self._solve(self._m_covectors, self._gram_m_inv, x)

    def project_h(self, x: Mapping[int, Fraction]) -> MCoords:
        return self._solve(self._h_covectors, self._gram_h_inv, x)


def _covector(q: BiInvariantForm, x: Mapping[int, Fraction]) -> GVector:
    out: GVector = {}
    for i, a in x.items():
        for j, v in enumerate(q.gram[i]):
            if v:
                value = out.get(j, 0) + a * v
                if value:
                    out[j] = value
                else:
                    out.pop(j, None)
    return out


def _gram(q: BiInvariantForm, basis: Sequence[GVector]) -> ScalarMatrix:
    rows = [[q.pair(x, y) for y in basis] for x in basis]
    return ScalarMatrix.from_rows(rows, cols=len(basis))


def _check_independent(vectors: Sequence[Sequence[Fraction]], dim: int, what: str) -> None:
    for v in vectors:
        if len(v) != dim:
            raise StructuralError(f"{what} vector of length {len(v)} in a {dim}-dimensional algebra")
    _, pivots = rref_rational([list(v) for v in vectors], dim)
    if len(pivots) != len(vectors):
        raise StructuralError(f"{what} vectors are linearly dependent", details={"rank": len(pivots), "count": len(vectors)})


def _label(a: LieAlgebra, x: Mapping[int, Fraction]) -> Dict[str, str]:
    return {a.labels[i]: str(v) for i, v in sorted(x.items())}


def reductive_split(spec: HomogeneousSpaceSpec) -> ReductiveSplit:
    a, q = spec.algebra, spec.q
    n = a.dim
    _check_independent(spec.h_basis, n, "h_basis")
    h_basis = tuple(dense_to_sparse(v) for v in spec.h_basis)

    if spec.m_basis is None:
        constraint = ScalarMatrix.from_rows([list(_dense(_covector(q, h), n)) for h in h_basis], cols=n)
        complement = nullspace(constraint).basis
        m_basis = tuple(dense_to_sparse(v) for v in complement)  # type: ignore[arg-type]
    else:
        _check_independent(spec.m_basis, n, "m_basis")
        m_basis = tuple(dense_to_sparse(v) for v in spec.m_basis)
        if len(m_basis) + len(h_basis) != n:
            raise StructuralError(f"dim h + dim m = {len(h_basis) + len(m_basis)} but dim g = {n}")
        for i, h in enumerate(h_basis):
            for j, m in enumerate(m_basis):
                if q.pair(h, m):
                    raise ValidationFailure(
                        "Supplied m_basis is not Q-orthogonal to h",
                        code="not_complement",
                        details={"h_index": i, "m_index": j, "value": str(q.pair(h, m))},
                    )

    gram_h, gram_m = _gram(q, h_basis), _gram(q, m_basis)
    split = ReductiveSplit(
        h_basis=h_basis,
        m_basis=m_basis,
        gram_h=gram_h,
        gram_m=gram_m,
        _h_covectors=tuple(_covector(q, h) for h in h_basis),
        _m_covectors=tuple(_covector(q, m) for m in m_basis),
        _gram_h_inv=_rational_rows(inverse(gram_h)) if h_basis else (),
        _gram_m_inv=_rational_rows(inverse(gram_m)) if m_basis else (),
    )

    # h is a subalgebra
    for i in range(len(h_basis)):
        for j in range(i + 1, len(h_basis)):
            br = a.bracket(h_basis[i], h_basis[j])
            escape = split.project_m(br)
            if escape:
                raise ValidationFailure(
                    "h_basis does not span a subalgebra",
                    code="not_subalgebra",
                    details={"pair": [i, j], "bracket": _label(a, br), "m_component": {str(k): str(v) for k, v in escape.items()}},
                )

    # [h, m] inside m
    for i, h in enumerate(h_basis):
        for j, m in enumerate(m_basis):
            leak = split.project_h(a.bracket(h, m))
            if leak:
                raise ValidationFailure(
                    "[h, m] is not contained in m",
                    code="not_reductive",
                    details={"h_index": i, "m_index": j},
                )

    _check_blocks(spec, split)
    logger.info(f"Reductive split of '{spec.name}': dim g = {n}, dim h = {len(h_basis)}, dim m = {len(m_basis)}")
    return split


def _dense(x: Mapping[int, Fraction], n: int) -> Tuple[Fraction, ...]:
    return tuple(x.get(i, Fraction(0)) for i in range(n))


def _rational_rows(m: ScalarMatrix) -> Tuple[Tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in r) for r in m.entries)  # type: ignore[arg-type]


def resolved_blocks(spec: HomogeneousSpaceSpec, dim_m: int) -> Tuple[Block, ...]:
    if spec.blocks:
        return spec.blocks
    return (Block("m", tuple(range(dim_m))),)


def _check_blocks(spec: HomogeneousSpaceSpec, split: ReductiveSplit) -> None:
    dim_m = len(split.m_basis)
    blocks = resolved_blocks(spec, dim_m)
    seen: Dict[int, str] = {}
    for block in blocks:
        for idx in block.indices:
            if not 0 <= idx < dim_m:
                raise ValidationFailure(f"Block '{block.name}' index {idx} out of range", code="index_out_of_range")
            if idx in seen:
                raise ValidationFailure(
                    f"m index {idx} appears in blocks '{seen[idx]}' and '{block.name}'", code="blocks_not_partition"
                )
            seen[idx] = block.name
    missing = [i for i in range(dim_m) if i not in seen]
    if missing:
        raise ValidationFailure(f"m indices {missing} belong to no block", code="blocks_not_partition")

    gram = split.gram_m
    for i in range(dim_m):
        for j in range(i + 1, dim_m):
            if seen[i] != seen[j] and gram[i, j]:
                raise ValidationFailure(
                    f"Blocks '{seen[i]}' and '{seen[j]}' are not Q-orthogonal",
                    code="blocks_not_orthogonal",
                    details={"indices": [i, j]},
                )

    a = spec.algebra
    for block in blocks:
        members = set(block.indices)
        for hi, h in enumerate(split.h_basis):
            for j in block.indices:
                image = split.project_m(a.bracket(h, split.m_basis[j]))
                outside = sorted(k for k in image if k not in members)
                if outside:
                    raise ValidationFailure(
                        f"Block '{block.name}' is not invariant under h_basis[{hi}]",
                        code="block_not_invariant",
                        details={"block": block.name, "h_index": hi, "m_index": j, "escapes_to": outside},
                    )


@dataclass(frozen=True)
class HomogeneousSpace:
    """A validated space: spec, split, m-projected brackets and lazily built caches."""

    spec: HomogeneousSpaceSpec
    split: ReductiveSplit
    # (p, q) with p < q -> m-coordinates of [m_p, m_q]_m
    bracket_table: Mapping[Tuple[int, int], MCoords]
    blocks: Tuple[Block, ...]
    cache: Dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def dim_m(self) -> int:
        return len(self.split.m_basis)

    @property
    def dim_h(self) -> int:
        return len(self.split.h_basis)

    @property
    def parameters(self) -> Tuple[str, ...]:
        return self.spec.parameters

    @property
    def m_labels(self) -> Tuple[str, ...]:
        if self.spec.m_labels is not None:
            return self.spec.m_labels
        return tuple(f"m{i}" for i in range(self.dim_m))

    def block_of(self, index: int) -> Block:
        for block in self.blocks:
            if index in block.indices:
                return block
        raise StructuralError(f"m index {index} belongs to no block")

    def isotropy_columns(self, x: Mapping[int, Fraction]) -> List[MCoords]:
        """Column j holds the m-coordinates of [x, m_j]; x must lie in h."""
        a = self.spec.algebra
        return [self.split.project_m(a.bracket(x, m)) for m in self.split.m_basis]

    def isotropy_generators(self) -> List[List[MCoords]]:
        if "isotropy" not in self.cache:
            self.cache["isotropy"] = [self.isotropy_columns(h) for h in self.split.h_basis]
        return self.cache["isotropy"]


def prepare_space(spec: HomogeneousSpaceSpec) -> HomogeneousSpace:
    """Validate the algebra, Q and the split, then tabulate [m, m]_m."""
    report = validate_algebra(spec.algebra)
    for check in report.failures:
        code = "jacobi_failure" if check.name == "jacobi" else "antisymmetry_failure"
        raise ValidationFailure(f"Lie algebra check '{check.name}' failed", code=code, details=check.witness)
    q_report = validate_q(spec.algebra, spec.q)
    for check in q_report.failures:
        raise ValidationFailure(f"Bi-invariant form check '{check.name}' failed", code="q_invalid", details=check.witness)

    split = reductive_split(spec)
    a = spec.algebra
    table: Dict[Tuple[int, int], MCoords] = {}
    for p in range(len(split.m_basis)):
        for r in range(p + 1, len(split.m_basis)):
            coords = split.project_m(a.bracket(split.m_basis[p], split.m_basis[r]))
            if coords:
                table[(p, r)] = coords
    return HomogeneousSpace(spec, split, table, resolved_blocks(spec, len(split.m_basis)))


def isotropy_operator(space: HomogeneousSpace, x: Union[Sequence[Fraction], Mapping[int, Fraction]]) -> ScalarMatrix:
    """Matrix of ad_x restricted to m, in m_basis coordinates."""
    vec = dict(x) if isinstance(x, Mapping) else dense_to_sparse(x)
    if space.split.project_m(vec):
        raise ValidationFailure("Vector is not in the isotropy subalgebra", code="outside_subalgebra",
                                details=_label(space.spec.algebra, vec))
    cols = space.isotropy_columns(vec)
    n = space.dim_m
    rows = [[cols[j].get(r, Fraction(0)) for j in range(n)] for r in range(n)]
    return ScalarMatrix.from_rows(rows, cols=n)
