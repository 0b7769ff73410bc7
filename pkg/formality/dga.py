# ---- File: formality/dga.py ----

"""Finite graded-commutative differential algebras given by tables, and the relation check.

An AbstractDGA lists basis elements with degrees, the nonzero products of
basis elements, the differential of each element, and a basis of cohomology
classes in one degree together with polynomial relations among them. The
check asks whether closed representatives of the classes can satisfy the
relations on the nose, which a formal metric would force.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from algebra.expressions import parse_poly, parse_rational
from algebra.linalg import ScalarMatrix, nullspace, rref_rational
from algebra.polynomial import Poly, univariate_gcd
from algebra.roots import real_roots
from errors import SpecParseError, ValidationFailure
from formality.nilpotency import propagate_zeros, search_witness
from formality.reports import FORMAL, NOT_FORMAL, UNDECIDED, FormalityReport, Witness

logger = logging.getLogger(__name__)

Vector = Dict[int, Fraction]
PolyVector = Dict[int, Poly]


@dataclass(frozen=True)
class ClassSpec:
    name: str
    degree: int


@dataclass
class AbstractDGA:
    name: str
    elements: Tuple[str, ...]
    degrees: Tuple[int, ...]
    # (i, j) -> product of elements i and j; absent pairs multiply to zero
    products: Dict[Tuple[int, int], Vector]
    differential: Dict[int, Vector]
    classes: Tuple[ClassSpec, ...] = ()
    relations: Tuple[str, ...] = ()
    notes: Tuple[str, ...] = ()
    unit: Optional[int] = None
    _cohomology: Dict[int, Tuple[List[Vector], List[Vector]]] = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise SpecParseError(f"Unknown element '{name}'", code="unknown_element") from None

    def in_degree(self, k: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == k]

    # --- Arithmetic on element vectors ---

    def multiply_basis(self, i: int, j: int) -> Vector:
        if self.unit is not None:
            if i == self.unit:
                return {j: Fraction(1)}
            if j == self.unit:
                return {i: Fraction(1)}
        return self.products.get((i, j), {})

    def multiply(self, a: Mapping[int, Any], b: Mapping[int, Any], zero: Any = Fraction(0)) -> Dict[int, Any]:
        out: Dict[int, Any] = {}
        for i, x in a.items():
            for j, y in b.items():
                for k, c in self.multiply_basis(i, j).items():
                    out[k] = out.get(k, zero) + x * y * c
        return {k: v for k, v in out.items() if not _is_null(v)}

    def d(self, a: Mapping[int, Any], zero: Any = Fraction(0)) -> Dict[int, Any]:
        out: Dict[int, Any] = {}
        for i, x in a.items():
            for k, c in self.differential.get(i, {}).items():
                out[k] = out.get(k, zero) + x * c
        return {k: v for k, v in out.items() if not _is_null(v)}

    # --- Cohomology ---

    def _d_matrix(self, k: int) -> ScalarMatrix:
        source, target = self.in_degree(k), self.in_degree(k + 1)
        rows = [[self.differential.get(i, {}).get(t, Fraction(0)) for i in source] for t in target]
        return ScalarMatrix.from_rows(rows, cols=len(source))

    def closed_and_exact(self, k: int) -> Tuple[List[Vector], List[Vector]]:
        """Closed and exact elements of degree k as element vectors (exact ones spanning the image of d)."""
        if k not in self._cohomology:
            source = self.in_degree(k)
            closed = [
                {source[c]: Fraction(v) for c, v in enumerate(vec) if v}  # type: ignore[arg-type]
                for vec in nullspace(self._d_matrix(k)).basis
            ]
            exact: List[Vector] = []
            below = self.in_degree(k - 1)
            if below and source:
                images = [[self.differential.get(i, {}).get(t, Fraction(0)) for t in source] for i in below]
                reduced, _ = rref_rational(images, len(source))
                exact = [{source[c]: v for c, v in enumerate(row) if v} for row in reduced]
            self._cohomology[k] = (closed, exact)
        return self._cohomology[k]

    def betti(self) -> Dict[int, int]:
        out = {}
        for k in sorted(set(self.degrees)):
            closed, exact = self.closed_and_exact(k)
            out[k] = len(closed) - len(exact)
        return out


def _is_null(value: Any) -> bool:
    if isinstance(value, Poly):
        return value.is_zero
    return not value


# --- Loading and axioms ---


def _fail(axiom: str, message: str, **details: Any) -> ValidationFailure:
    return ValidationFailure(message, code="dga_axiom", details={"axiom": axiom, **details})


def load_dga(data: Mapping[str, Any]) -> AbstractDGA:
    """Build an AbstractDGA from its table form and verify the axioms exactly."""
    try:
        names = tuple(str(e["name"]) for e in data["elements"])
        degrees = tuple(int(e["degree"]) for e in data["elements"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecParseError(f"Malformed element list: {exc}", code="malformed_spec") from exc
    if len(set(names)) != len(names):
        raise SpecParseError("Duplicate element names", code="malformed_spec")
    dga = AbstractDGA(
        name=str(data.get("name", "dga")),
        elements=names,
        degrees=degrees,
        products={},
        differential={},
        notes=tuple(data.get("notes", ())),
    )
    unit = data.get("unit")
    if unit is not None:
        dga.unit = dga.index(str(unit))
        if degrees[dga.unit] != 0:
            raise _fail("unit", f"Unit '{unit}' must have degree 0")

    def vector(spec: Mapping[str, Any]) -> Vector:
        parsed = {dga.index(k): parse_rational(v) for k, v in spec.items()}
        return {k: v for k, v in parsed.items() if v}

    for entry in data.get("products", ()):
        i, j = dga.index(entry["left"]), dga.index(entry["right"])
        dga.products[(i, j)] = vector(entry["result"])
    for key, spec in data.get("differential", {}).items():
        dga.differential[dga.index(key)] = vector(spec)
    dga.classes = tuple(ClassSpec(str(c["name"]), int(c["degree"])) for c in data.get("classes", ()))
    dga.relations = tuple(str(r) for r in data.get("relations", ()))

    _fill_graded_commutativity(dga)
    validate_dga(dga)
    logger.info(f"Loaded DGA '{dga.name}': {dga.dim} elements, {len(dga.products)} nonzero products")
    return dga


def _sign(dga: AbstractDGA, i: int, j: int) -> int:
    return -1 if dga.degrees[i] % 2 and dga.degrees[j] % 2 else 1


def _fill_graded_commutativity(dga: AbstractDGA) -> None:
    for (i, j), value in list(dga.products.items()):
        if (j, i) not in dga.products:
            s = _sign(dga, i, j)
            dga.products[(j, i)] = {k: s * v for k, v in value.items()}


def validate_dga(dga: AbstractDGA) -> None:
    """Degrees, graded commutativity, associativity, the signed product rule and d^2 = 0."""
    deg = dga.degrees
    for (i, j), value in dga.products.items():
        for k in value:
            if deg[k] != deg[i] + deg[j]:
                raise _fail("degree", f"{dga.elements[i]}*{dga.elements[j]} has a term outside degree {deg[i] + deg[j]}")
        mirrored = dga.products.get((j, i), {})
        s = _sign(dga, i, j)
        if {k: s * v for k, v in value.items()} != mirrored:
            raise _fail("graded_commutativity", f"{dga.elements[i]}*{dga.elements[j]} and its mirror disagree",
                        left=dga.elements[i], right=dga.elements[j])
    for i, value in dga.differential.items():
        for k in value:
            if deg[k] != deg[i] + 1:
                raise _fail("degree", f"d({dga.elements[i]}) leaves degree {deg[i] + 1}")

    n = dga.dim
    for i in range(n):
        if dga.d(dga.d({i: Fraction(1)})):
            raise _fail("d_squared", f"d(d({dga.elements[i]})) != 0", element=dga.elements[i])
    for i in range(n):
        for j in range(n):
            xi, xj = {i: Fraction(1)}, {j: Fraction(1)}
            lhs = dga.d(dga.multiply(xi, xj))
            rhs = _add(dga.multiply(dga.d(xi), xj), dga.multiply(xi, dga.d(xj)), -1 if deg[i] % 2 else 1)
            if lhs != rhs:
                raise _fail("product_rule", f"d({dga.elements[i]}*{dga.elements[j]}) violates the product rule",
                            left=dga.elements[i], right=dga.elements[j])
            for k in range(n):
                xk = {k: Fraction(1)}
                if dga.multiply(dga.multiply(xi, xj), xk) != dga.multiply(xi, dga.multiply(xj, xk)):
                    raise _fail("associativity", f"({dga.elements[i]}*{dga.elements[j]})*{dga.elements[k]} is not associative")


def _add(a: Vector, b: Vector, sign: int) -> Vector:
    out = dict(a)
    for k, v in b.items():
        value = out.get(k, 0) + sign * v
        if value:
            out[k] = value
        else:
            out.pop(k, None)
    return out


def dga_to_dict(dga: AbstractDGA) -> Dict[str, Any]:
    def text(v: Vector) -> Dict[str, str]:
        return {dga.elements[k]: str(c) for k, c in sorted(v.items())}

    out: Dict[str, Any] = {
        "name": dga.name,
        "elements": [{"name": n, "degree": d} for n, d in zip(dga.elements, dga.degrees)],
        "products": [
            {"left": dga.elements[i], "right": dga.elements[j], "result": text(v)}
            for (i, j), v in sorted(dga.products.items())
            if v
        ],
        "differential": {dga.elements[i]: text(v) for i, v in sorted(dga.differential.items()) if v},
        "classes": [{"name": c.name, "degree": c.degree} for c in dga.classes],
        "relations": list(dga.relations),
        "notes": list(dga.notes),
    }
    if dga.unit is not None:
        out["unit"] = dga.elements[dga.unit]
    return out


# --- Relations on representatives ---


def _relation_polys(dga: AbstractDGA) -> List[Poly]:
    names = [c.name for c in dga.classes]
    degree = {c.name: c.degree for c in dga.classes}
    polys = []
    for text in dga.relations:
        poly = parse_poly(text, names)
        weights = {sum(e * degree[n] for e, n in zip(exps, names)) for exps in poly.terms}
        if len(weights) > 1:
            raise SpecParseError(f"Relation '{text}' is not homogeneous in degree", code="malformed_relation")
        polys.append(poly)
    return polys


def evaluate_relation(dga: AbstractDGA, relation: Poly, reps: Mapping[str, PolyVector], zero: Poly) -> PolyVector:
    """relation(reps) as an element vector with polynomial coefficients."""
    total: PolyVector = {}
    for exps, c in relation.terms.items():
        term: Optional[PolyVector] = None
        for name, e in zip(relation.parameters, exps):
            for _ in range(e):
                term = dict(reps[name]) if term is None else dga.multiply(term, reps[name], zero)
        if term is None:
            term = {dga.unit: zero + 1} if dga.unit is not None else {}
        for k, v in term.items():
            value = total.get(k, zero) + v.scale(c)
            if value.is_zero:
                total.pop(k, None)
            else:
                total[k] = value
    return total


def _generators(dga: AbstractDGA, relations: Sequence[Poly], reps: Mapping[str, PolyVector], zero: Poly) -> List[Poly]:
    out: List[Poly] = []
    for r in relations:
        out.extend(p for _, p in sorted(evaluate_relation(dga, r, reps, zero).items()) if not p.is_zero)
    return out


def _pure_relations(relations: Sequence[Poly], name: str) -> List[Poly]:
    return [r for r in relations if r.variables_used() == (name,)]


def _directions(dga: AbstractDGA, pure: Sequence[Poly], name: str, basis: Sequence[Vector]) -> Tuple[List[Tuple[Fraction, Fraction]], int]:
    """Rational points (u:v) of the plane of representatives u*z1 + v*z2 on which every pure relation holds."""
    uv = ("u", "v")
    zero = Poly.zero(uv)
    u, v = Poly.variable(uv, "u"), Poly.variable(uv, "v")
    combined: PolyVector = {}
    for coeff, vec in ((u, basis[0]), (v, basis[1])):
        for k, c in vec.items():
            combined[k] = combined.get(k, zero) + coeff.scale(c)
    rep = {name: {k: p for k, p in combined.items() if not p.is_zero}}
    generators = _generators(dga, pure, rep, zero)
    if not generators:
        return [], 0
    directions: List[Tuple[Fraction, Fraction]] = []
    if all(g.evaluate({"u": 1, "v": 0}) == 0 for g in generators):
        directions.append((Fraction(1), Fraction(0)))
    common = generators[0].substitute({"v": 1})
    for g in generators[1:]:
        common = univariate_gcd(common, g.substitute({"v": 1}), "u")
    irrational = 0
    if not common.is_constant:
        for root in real_roots(common):
            if root.exact:
                directions.append((root.lower, Fraction(1)))
            else:
                irrational += 1
    return directions, irrational


def _combine(coeffs: Sequence[Any], basis: Sequence[Vector], zero: Any) -> Dict[int, Any]:
    out: Dict[int, Any] = {}
    for c, vec in zip(coeffs, basis):
        for k, v in vec.items():
            out[k] = out.get(k, zero) + c * v
    return {k: v for k, v in out.items() if not _is_null(v)}


def _vector_text(dga: AbstractDGA, vec: Mapping[int, Fraction]) -> str:
    if not vec:
        return "0"
    return " + ".join(f"{c}*{dga.elements[k]}" for k, c in sorted(vec.items()))


def _two_class_check(dga: AbstractDGA, relations: List[Poly], report: FormalityReport) -> Optional[str]:
    """The plane argument: pin the class with a pure relation to finitely many lines, then branch."""
    x_spec = next((c for c in dga.classes if _pure_relations(relations, c.name)), None)
    if x_spec is None:
        return None
    y_spec = next(c for c in dga.classes if c.name != x_spec.name)
    closed, exact = dga.closed_and_exact(x_spec.degree)
    if len(closed) != 2 or exact:
        return None

    directions, irrational = _directions(dga, _pure_relations(relations, x_spec.name), x_spec.name, closed)
    logger.info(f"relation plane for '{x_spec.name}': {len(directions)} rational lines, {irrational} irrational")
    if not directions and not irrational:
        report.verdict = NOT_FORMAL
        report.reason = f"no nonzero representative of {x_spec.name} satisfies its relations"
        return report.reason

    svars = ("s", "t", "z")
    zero = Poly.zero(svars)
    s, t, z = (Poly.variable(svars, n) for n in svars)
    contradictions: List[str] = []
    for u0, v0 in directions:
        x0 = _combine([u0, v0], closed, Fraction(0))
        other = closed[0] if v0 else closed[1]
        reps = {
            x_spec.name: {k: s.scale(c) for k, c in x0.items()},
            y_spec.name: _combine([t, z], [x0, other], zero),
        }
        generators = _generators(dga, relations, reps, zero)
        result = propagate_zeros(generators, svars, lambda zeros: bool(zeros & {"s", "z"}))
        report.checked_degrees.append((x_spec.degree, y_spec.degree))
        if result.closed:
            contradictions.append(
                f"{x_spec.name} ~ {_vector_text(dga, x0)}: " + "; ".join(step.statement for step in result.steps)
            )
            continue
        point = result.witness
        if point is None:
            found = search_witness(generators, 3, accept=lambda p: bool(p[0] and p[2]))
            point = dict(zip(svars, found)) if found is not None else None
        if point is not None and point["s"] and point["z"]:
            x_rep = {k: c * point["s"] for k, c in x0.items()}
            y_rep = _combine([point["t"], point["z"]], [x0, other], Fraction(0))
            report.verdict = FORMAL
            report.witnesses.append(
                Witness(
                    degrees=(x_spec.degree, y_spec.degree),
                    indices=(),
                    product=f"{x_spec.name} = {_vector_text(dga, x_rep)}; {y_spec.name} = {_vector_text(dga, y_rep)}",
                    note="representatives satisfying every relation",
                )
            )
            report.reason = "closed representatives satisfy every declared relation"
            return report.reason
        report.verdict = UNDECIDED
        report.reason = f"branching for {x_spec.name} ~ {_vector_text(dga, x0)} neither closed nor produced a witness"
        return report.reason

    if irrational:
        report.verdict = UNDECIDED
        report.reason = f"{irrational} irrational directions for {x_spec.name} left unchecked"
        return report.reason
    report.verdict = NOT_FORMAL
    report.reason = "every admissible representative forces the classes to be dependent"
    for line in contradictions:
        report.witnesses.append(Witness(degrees=(x_spec.degree,), indices=(), product=line, note="contradiction"))
    return report.reason


def _generic_search(dga: AbstractDGA, relations: List[Poly], report: FormalityReport) -> None:
    """Bounded search over all closed representatives with independent classes."""
    variables: List[str] = []
    reps: Dict[str, PolyVector] = {}
    layout: List[Tuple[str, List[Vector], int]] = []
    for c in dga.classes:
        closed, exact = dga.closed_and_exact(c.degree)
        names = [f"{c.name}{i + 1}" for i in range(len(closed))]
        layout.append((c.name, closed, len(variables)))
        variables.extend(names)
    zero = Poly.zero(variables)
    for name, closed, offset in layout:
        coeffs = [Poly.variable(variables, variables[offset + i]) for i in range(len(closed))]
        reps[name] = _combine(coeffs, closed, zero)
    generators = _generators(dga, relations, reps, zero)

    def independent(point: Tuple[int, ...]) -> bool:
        rows: Dict[int, List[List[Fraction]]] = {}
        for name, closed, offset in layout:
            spec = next(c for c in dga.classes if c.name == name)
            _, exact = dga.closed_and_exact(spec.degree)
            vec = _combine([Fraction(p) for p in point[offset:offset + len(closed)]], closed, Fraction(0))
            rows.setdefault(spec.degree, []).append(_modulo_exact(dga, spec.degree, vec, exact))
        for degree, vectors in rows.items():
            reduced, _ = rref_rational(vectors, len(dga.in_degree(degree)))
            if len(reduced) < len(vectors):
                return False
        return True

    point = search_witness(generators, len(variables), accept=independent)
    if point is None:
        report.verdict = UNDECIDED
        report.reason = "no representatives found within the search bounds and no contradiction derived"
        return
    report.verdict = FORMAL
    pieces = []
    for name, closed, offset in layout:
        vec = _combine(list(point[offset:offset + len(closed)]), closed, Fraction(0))
        pieces.append(f"{name} = {_vector_text(dga, vec)}")
    report.witnesses.append(Witness(degrees=tuple(c.degree for c in dga.classes), indices=(), product="; ".join(pieces),
                                    note="representatives satisfying every relation"))
    report.reason = "closed representatives satisfy every declared relation"


def _modulo_exact(dga: AbstractDGA, degree: int, vec: Vector, exact: Sequence[Vector]) -> List[Fraction]:
    """Dense coordinates of vec followed by elimination against the exact elements."""
    cols = dga.in_degree(degree)
    dense = [vec.get(c, Fraction(0)) for c in cols]
    if not exact:
        return dense
    basis = [[e.get(c, Fraction(0)) for c in cols] for e in exact]
    reduced, pivots = rref_rational(basis, len(cols))
    for row, pc in zip(reduced, pivots):
        factor = dense[pc]
        if factor:
            dense = [a - factor * b for a, b in zip(dense, row)]
    return dense


def abstract_check(dga: AbstractDGA) -> FormalityReport:
    """Can closed representatives of the declared classes satisfy the declared relations exactly?"""
    report = FormalityReport(FORMAL, assumptions=list(dga.notes))
    betti = dga.betti()
    if not dga.relations:
        report.reason = "no relations declared; nothing constrains the representatives"
        return report
    for c in dga.classes:
        if betti.get(c.degree, 0) != sum(1 for o in dga.classes if o.degree == c.degree):
            report.verdict = UNDECIDED
            report.reason = f"classes of degree {c.degree} do not form a basis of cohomology (b = {betti.get(c.degree, 0)})"
            return report
    relations = _relation_polys(dga)
    if len(dga.classes) == 2 and len({c.degree for c in dga.classes}) == 1:
        if _two_class_check(dga, relations, report) is not None:
            logger.info(f"abstract check of '{dga.name}': {report.verdict} ({report.reason})")
            return report
    _generic_search(dga, relations, report)
    logger.info(f"abstract check of '{dga.name}': {report.verdict} ({report.reason})")
    return report
