# ---- File: invariants/complex.py ----

"""The invariant subcomplex of forms on m, its cohomology and harmonic subspaces.

Invariant k-forms are the joint kernel of the induced isotropy action. Torus
generators (operators with at most one nonzero entry per row and column) are
handled first: they split the monomials into small connected components whose
kernels are computed independently. The remaining generators then cut the
kernel down one at a time.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from algebra.linalg import ScalarMatrix, SparseEchelon, normalize_pivots, nullspace, rref_rational, sparse_kernel
from algebra.polynomial import Poly
from algebra.scalars import RatFunc, Scalar, is_zero, simplify
from config import settings
from errors import StructuralError
from forms.differential import d_form
from forms.exterior import Form, Indices, act_on_form
from forms.metric import MetricOnM, inner_product, validate_metric
from lie.space import HomogeneousSpace, MCoords

logger = logging.getLogger(__name__)

SparseForm = Dict[Indices, Fraction]


@dataclass(frozen=True)
class FormSpace:
    degree: int
    role: str
    basis: Tuple[Form, ...]
    # Coordinates of each basis form in the invariant basis of the same degree
    coordinates: Tuple[Tuple[Scalar, ...], ...] = ()
    pivots: Tuple[Poly, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.basis)


@dataclass(frozen=True)
class BettiVector:
    numbers: Tuple[int, ...]
    invariant_dims: Tuple[int, ...]

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.numbers))

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.numbers)


# --- Invariant forms ---


def _is_torus_like(columns: Sequence[MCoords]) -> bool:
    rows_seen = set()
    for col in columns:
        if len(col) > 1:
            return False
        for r in col:
            if r in rows_seen:
                return False
            rows_seen.add(r)
    return True


def _act(columns: Sequence[MCoords], vector: Mapping[Indices, Fraction], dim: int, degree: int) -> SparseForm:
    image = act_on_form(columns, Form._raw(dim, degree, dict(vector)))
    return image.coeffs  # type: ignore[return-value]


class _UnionFind:
    def __init__(self, items: Sequence[Indices]):
        self.parent = {x: x for x in items}

    def find(self, x: Indices) -> Indices:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: Indices, b: Indices) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _torus_kernel(monomials: List[Indices], torus: List[List[MCoords]], dim: int, degree: int) -> Tuple[List[SparseForm], int]:
    if not torus:
        return [{m: Fraction(1)} for m in monomials], 1
    images = {m: [_act(gen, {m: Fraction(1)}, dim, degree) for gen in torus] for m in monomials}
    uf = _UnionFind(monomials)
    for m, per_gen in images.items():
        for img in per_gen:
            for target in img:
                uf.union(m, target)
    components: Dict[Indices, List[Indices]] = {}
    for m in monomials:
        components.setdefault(uf.find(m), []).append(m)

    kernel: List[SparseForm] = []
    for root in sorted(components):
        members = components[root]
        position = {m: i for i, m in enumerate(members)}
        rows: List[List[Fraction]] = []
        for g in range(len(torus)):
            block: Dict[Indices, List[Fraction]] = {}
            for m in members:
                for target, v in images[m][g].items():
                    block.setdefault(target, [Fraction(0)] * len(members))[position[m]] += v
            rows.extend(block[t] for t in sorted(block))
        if not rows:
            kernel.extend({m: Fraction(1)} for m in members)
            continue
        for vec in nullspace(ScalarMatrix.from_rows(rows, cols=len(members))).basis:
            kernel.append({members[i]: Fraction(v) for i, v in enumerate(vec) if v})  # type: ignore[arg-type]
    return kernel, len(components)


def _combine(vectors: Sequence[SparseForm], coefficients: Mapping[int, Fraction]) -> SparseForm:
    out: SparseForm = {}
    for j, c in coefficients.items():
        for key, v in vectors[j].items():
            value = out.get(key, 0) + c * v
            if value:
                out[key] = value
            else:
                out.pop(key, None)
    return out


def compute_invariant_basis(space: HomogeneousSpace, k: int) -> Tuple[List[Form], List[Indices]]:
    """RREF basis of invariant k-forms and the pivot monomial of each basis form."""
    dim = space.dim_m
    if k < 0 or k > dim:
        return [], []
    monomials = list(combinations(range(dim), k))
    generators = space.isotropy_generators()
    torus = [g for g in generators if _is_torus_like(g) and any(g)]
    rest = [g for g in generators if not _is_torus_like(g)]

    kernel, n_components = _torus_kernel(monomials, torus, dim, k)
    logger.debug(f"degree {k}: {len(monomials)} monomials, {len(torus)} torus generators, torus kernel {len(kernel)}")
    for gen in rest:
        if not kernel:
            break
        images = [_act(gen, v, dim, k) for v in kernel]
        relations = sparse_kernel(images)
        kernel = [_combine(kernel, rel) for rel in relations]
        logger.debug(f"degree {k}: kernel after generator -> {len(kernel)}")

    echelon = SparseEchelon()
    for v in kernel:
        echelon.insert(v)
    basis: List[Form] = []
    pivots: List[Indices] = []
    for pivot, vec in echelon.rref():
        basis.append(Form._raw(dim, k, dict(vec)))  # type: ignore[arg-type]
        pivots.append(pivot)  # type: ignore[arg-type]
    logger.info(
        f"invariant {k}-forms on '{space.name}': {len(monomials)} monomials -> {n_components} torus components -> dim {len(basis)}"
    )
    return basis, pivots


class InvariantComplex:
    """Lazily computed invariant complex of one space, metric independent."""

    def __init__(self, space: HomogeneousSpace):
        self.space = space
        self._bases: Dict[int, Tuple[List[Form], List[Indices]]] = {}
        self._d: Dict[int, ScalarMatrix] = {}
        self._closed: Dict[int, FormSpace] = {}
        self._exact: Dict[int, FormSpace] = {}

    @property
    def top(self) -> int:
        return self.space.dim_m

    def basis(self, k: int) -> List[Form]:
        if k not in self._bases:
            self._bases[k] = compute_invariant_basis(self.space, k)
        return self._bases[k][0]

    def pivots(self, k: int) -> List[Indices]:
        self.basis(k)
        return self._bases[k][1]

    def invariant(self, k: int) -> FormSpace:
        basis = self.basis(k)
        identity = tuple(tuple(Fraction(int(i == j)) for j in range(len(basis))) for i in range(len(basis)))
        return FormSpace(k, "invariant", tuple(basis), identity)

    def coordinates(self, k: int, form: Form, verify: Optional[bool] = None) -> Tuple[Scalar, ...]:
        """Coordinates of an invariant k-form, read off at the pivot monomials."""
        basis = self.basis(k)
        pivots = self.pivots(k)
        coords = tuple(form.coefficient(p) for p in pivots)
        check = settings.verify_coordinates if verify is None else verify
        if check:
            rebuilt = Form.zero(self.space.dim_m, k)
            for c, b in zip(coords, basis):
                if not is_zero(c):
                    rebuilt = rebuilt + b.scale(c)
            if rebuilt != form:
                raise StructuralError(f"Form of degree {k} is not in the invariant span")
        return coords

    def combination(self, k: int, coords: Sequence[Scalar]) -> Form:
        result = Form.zero(self.space.dim_m, k)
        for c, b in zip(coords, self.basis(k)):
            if not is_zero(c):
                result = result + b.scale(c)
        return result

    def d_matrix(self, k: int) -> ScalarMatrix:
        """Matrix of d from invariant k-forms to invariant (k+1)-forms."""
        if k not in self._d:
            source = self.basis(k)
            target_dim = len(self.basis(k + 1))
            columns = [self.coordinates(k + 1, d_form(self.space, b)) for b in source]
            rows = [[columns[j][i] for j in range(len(source))] for i in range(target_dim)]
            self._d[k] = ScalarMatrix.from_rows(rows, cols=len(source))
        return self._d[k]

    def closed(self, k: int) -> FormSpace:
        if k not in self._closed:
            d = self.d_matrix(k)
            vectors = nullspace(d).basis
            forms = tuple(self.combination(k, v) for v in vectors)
            self._closed[k] = FormSpace(k, "closed", forms, tuple(vectors))
        return self._closed[k]

    def exact(self, k: int) -> FormSpace:
        if k not in self._exact:
            if k == 0:
                self._exact[k] = FormSpace(0, "exact", (), ())
            else:
                d = self.d_matrix(k - 1)
                image, _ = rref_rational([list(d.column(j)) for j in range(d.cols)], d.rows)  # type: ignore[misc]
                vectors = tuple(tuple(r) for r in image)
                forms = tuple(self.combination(k, v) for v in vectors)
                self._exact[k] = FormSpace(k, "exact", forms, vectors)
                # exact forms must be closed
                next_d = self.d_matrix(k)
                for v in vectors:
                    if any(not is_zero(x) for x in next_d.apply(v)):
                        raise StructuralError(f"An exact {k}-form is not closed; d^2 != 0 on invariant forms")
        return self._exact[k]


def invariant_complex(space: HomogeneousSpace) -> InvariantComplex:
    if "complex" not in space.cache:
        space.cache["complex"] = InvariantComplex(space)
    return space.cache["complex"]


# --- Public operations ---


def invariant_forms(space: HomogeneousSpace, k: int) -> FormSpace:
    return invariant_complex(space).invariant(k)


def closed_and_exact(space: HomogeneousSpace, k: int) -> Tuple[FormSpace, FormSpace]:
    cx = invariant_complex(space)
    return cx.closed(k), cx.exact(k)


def differential_table(space: HomogeneousSpace, k: int) -> Tuple[FormSpace, FormSpace, ScalarMatrix]:
    cx = invariant_complex(space)
    return cx.invariant(k), cx.invariant(k + 1), cx.d_matrix(k)


def euler_characteristic(space: HomogeneousSpace) -> int:
    cx = invariant_complex(space)
    return sum((-1) ** k * len(cx.basis(k)) for k in range(cx.top + 1))


def betti(space: HomogeneousSpace) -> BettiVector:
    cx = invariant_complex(space)
    numbers, dims = [], []
    for k in range(cx.top + 1):
        closed, exact = cx.closed(k), cx.exact(k)
        numbers.append(closed.dim - exact.dim)
        dims.append(len(cx.basis(k)))
    vector = BettiVector(tuple(numbers), tuple(dims))
    if vector.euler_characteristic != euler_characteristic(space):
        raise StructuralError("Alternating Betti sum differs from the Euler characteristic of the complex")
    logger.info(f"Betti numbers of '{space.name}': {vector}")
    return vector


def exact_primitive(space: HomogeneousSpace, form: Form) -> Optional[Form]:
    """An invariant eta with d(eta) = form, or None when form is not exact."""
    k = form.degree
    if k == 0:
        return None
    cx = invariant_complex(space)
    target = cx.coordinates(k, form, verify=True)
    d = cx.d_matrix(k - 1)
    augmented = [list(d.row(i)) + [target[i]] for i in range(d.rows)]
    reduced, pivots = rref_rational(augmented, d.cols + 1)  # type: ignore[arg-type]
    if d.cols in pivots:
        return None
    solution = [Fraction(0)] * d.cols
    for row, pc in zip(reduced, pivots):
        solution[pc] = row[-1]
    return cx.combination(k - 1, solution)


def _ensure_metric(space: HomogeneousSpace, g: MetricOnM) -> None:
    key = f"validated:{id(space)}"
    if key not in g._cache:
        validate_metric(space, g, space.spec.samples)
        g._cache[key] = True


def _normalized(vector: Sequence[Scalar]) -> Tuple[Tuple[Scalar, ...], List[Poly]]:
    """The vector divided by its first nonzero entry, and the polynomials that entry must not meet."""
    lead = next((x for x in vector if not is_zero(x)), None)
    if lead is None:
        return tuple(vector), []
    excluded = [lead.num, lead.den] if isinstance(lead, RatFunc) else []
    out = []
    for x in vector:
        value = x / lead  # type: ignore[operator]
        out.append(simplify(value) if isinstance(value, RatFunc) else value)
    return tuple(out), excluded


def harmonic_space(space: HomogeneousSpace, k: int, g: MetricOnM) -> FormSpace:
    """Closed invariant k-forms orthogonal to all exact invariant k-forms."""
    _ensure_metric(space, g)
    cx = invariant_complex(space)
    closed, exact = cx.closed(k), cx.exact(k)
    if not exact.basis:
        return FormSpace(k, "harmonic", closed.basis, closed.coordinates)

    rows = [[inner_product(c, e, g) for c in closed.basis] for e in exact.basis]
    result = nullspace(ScalarMatrix.from_rows(rows, cols=closed.dim))
    forms: List[Form] = []
    coords: List[Tuple[Scalar, ...]] = []
    degenerate: List[Poly] = list(result.pivots)
    for vec in result.basis:
        x, excluded = _normalized(vec)
        degenerate.extend(excluded)
        form = Form.zero(space.dim_m, k)
        for c, b in zip(x, closed.basis):
            if not is_zero(c):
                form = form + b.scale(c)
        forms.append(form)
        coords.append(cx.coordinates(k, form))
    pivots = normalize_pivots(degenerate)
    space_out = FormSpace(k, "harmonic", tuple(forms), tuple(coords), pivots)
    if not g.is_parametric and space_out.dim != closed.dim - exact.dim:
        raise StructuralError(
            f"Harmonic {k}-forms have dimension {space_out.dim}, expected b_{k} = {closed.dim - exact.dim}"
        )
    if pivots:
        logger.warning(f"Harmonic {k}-forms degenerate where any of {[str(p) for p in pivots]} vanishes")
    return space_out
