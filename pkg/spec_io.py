# ---- File: spec_io.py ----

"""Spec and table files in, report documents out.

Spec files are JSON with every scalar written as an exact string. Names that
are not existing files resolve to the catalog directory (when configured) and
then to the bundled catalog, so `berger13.json` works without a file on disk.
"""

import json
import logging
import os
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, ValidationError

from algebra.expressions import parse_rational, parse_scalar
from algebra.roots import RootInterval
from algebra.scalars import Scalar, scalar_text
from catalog.flag_tables import FLAG_DEGREES, bundled_tables, flag_table_data
from catalog.spaces import CATALOG, bundled_spec, bundled_specs
from config import settings
from errors import SpecParseError, ValidationFailure
from formality.dga import AbstractDGA, dga_to_dict, load_dga
from formality.reports import FormalityReport, ObstructionReport, PolySystem, TrivialityVerdict
from forms.metric import metric_from_space, validate_metric
from invariants.complex import BettiVector, FormSpace
from lie.algebra import BiInvariantForm, LieAlgebra
from lie.matrices import RealMatrix, negative_half_trace, realify_complex, realify_quaternion, structure_constants_from_matrices
from lie.space import Block, HomogeneousSpace, HomogeneousSpaceSpec, MetricAssignment, prepare_space
from schemas.report import (
    BettiModel,
    DerivationStepModel,
    FormalityModel,
    FormSpaceModel,
    ObstructionModel,
    ObstructionReportModel,
    PolySystemModel,
    Report,
    RootModel,
    TrivialityModel,
    WitnessModel,
)
from schemas.spec_file import DgaFile, RepresentationModel, SpecFile

logger = logging.getLogger(__name__)

_REALIFICATION = {"real": 1, "complex": 2, "quaternion": 4}


# --- Reading ---


def _reject_float(text: str) -> Any:
    raise SpecParseError(f"Floating point literal {text} is not exact; write it as a string 'p/q'", code="float_rejected")


def load_json(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise SpecParseError(
            f"Malformed JSON in {source}: {exc.msg}",
            code="malformed_json",
            details={"line": exc.lineno, "column": exc.colno},
        ) from exc


def _from_pydantic(exc: ValidationError, source: str) -> SpecParseError:
    errors = [{"loc": ".".join(str(p) for p in e["loc"]), "msg": e["msg"]} for e in exc.errors()]
    code = "missing_field" if any(e["type"] == "missing" for e in exc.errors()) else "malformed_spec"
    return SpecParseError(f"Invalid spec file {source}: {errors[0]['loc']}: {errors[0]['msg']}", code=code, details=errors)


def _read_source(name: str) -> Optional[Tuple[str, str]]:
    """(text, path) of an existing file, looked up directly and then in the catalog directory."""
    candidates = [name]
    if settings.catalog_dir:
        candidates.append(os.path.join(settings.catalog_dir, name))
        if not name.endswith(".json"):
            candidates.append(os.path.join(settings.catalog_dir, name + ".json"))
    for path in candidates:
        if os.path.isfile(path):
            with open(path, "r", encoding="utf-8") as fh:
                return fh.read(), path
    return None


def _field(loc: str, message: str, code: str = "index_out_of_range") -> SpecParseError:
    return SpecParseError(f"{loc}: {message}", code=code, details={"loc": loc})


def _vector(values: Sequence[Any], dim: int, loc: str) -> Tuple[Fraction, ...]:
    if len(values) != dim:
        raise _field(loc, f"expected {dim} entries, got {len(values)}")
    return tuple(parse_rational(v) for v in values)


def _representation(rep: RepresentationModel, dim: int) -> List[RealMatrix]:
    width = _REALIFICATION[rep.field]
    if len(rep.matrices) != dim:
        raise _field("representation.matrices", f"expected {dim} matrices, got {len(rep.matrices)}")
    matrices: List[RealMatrix] = []
    for n, entries in enumerate(rep.matrices):
        raw: Dict[Tuple[int, int], Tuple[Fraction, ...]] = {}
        for entry in entries:
            if len(entry.value) != width:
                raise _field(f"representation.matrices.{n}", f"{rep.field} entries need {width} components", "malformed_spec")
            raw[(entry.row, entry.col)] = tuple(parse_rational(v) for v in entry.value)
        if width == 1:
            matrices.append({key: value[0] for key, value in raw.items() if value[0]})
        elif width == 2:
            matrices.append(realify_complex(raw))  # type: ignore[arg-type]
        else:
            matrices.append(realify_quaternion(raw))  # type: ignore[arg-type]
    return matrices


def _algebra(model: SpecFile) -> Tuple[LieAlgebra, BiInvariantForm]:
    dim = model.algebra.dim
    labels = tuple(model.algebra.labels or [f"g{i}" for i in range(dim)])
    if len(labels) != dim:
        raise _field("algebra.labels", f"expected {dim} labels, got {len(labels)}")
    triples = []
    for n, (i, j, terms) in enumerate(model.algebra.brackets):
        for idx in (i, j, *(k for k, _ in terms)):
            if not 0 <= idx < dim:
                raise _field(f"algebra.brackets.{n}", f"index {idx} out of range for dimension {dim}")
        triples.append((i, j, {k: parse_rational(c) for k, c in terms}))
    algebra = LieAlgebra.from_triples(labels, triples)

    if model.q_form == "negative_half_trace":
        assert model.representation is not None
        matrices = _representation(model.representation, dim)
        derived = structure_constants_from_matrices(labels, matrices)
        if not triples:
            algebra = derived
        elif dict(derived.brackets) != dict(algebra.brackets):
            raise ValidationFailure(
                "Brackets disagree with the commutators of the representation", code="representation_mismatch"
            )
        return algebra, negative_half_trace(matrices, _REALIFICATION[model.representation.field])

    if len(model.q_form) != dim:
        raise _field("q_form", f"expected {dim} rows, got {len(model.q_form)}")
    gram = tuple(_vector(row, dim, f"q_form.{n}") for n, row in enumerate(model.q_form))
    return algebra, BiInvariantForm(gram)


def _scalar(text: Any, parameters: Sequence[str]) -> Scalar:
    if isinstance(text, str) and text.startswith("$"):
        text = text[1:]
    return parse_scalar(text, parameters)


def spec_from_model(model: SpecFile) -> HomogeneousSpaceSpec:
    algebra, q = _algebra(model)
    dim = algebra.dim
    params = tuple(model.parameters)
    h_basis = tuple(_vector(v, dim, f"h_basis.{n}") for n, v in enumerate(model.h_basis))
    m_basis = None
    if model.m_basis is not None:
        m_basis = tuple(_vector(v, dim, f"m_basis.{n}") for n, v in enumerate(model.m_basis))

    metric = None
    if model.metric is not None:
        if model.metric.weights is not None:
            names = {b.name for b in model.blocks} or {"m"}
            unknown = sorted(set(model.metric.weights) - names)
            if unknown:
                raise _field("metric.weights", f"unknown blocks {unknown}", "unknown_block")
            metric = MetricAssignment(weights={k: _scalar(v, params) for k, v in model.metric.weights.items()})
        else:
            gram = model.metric.gram or []
            metric = MetricAssignment(gram=tuple(tuple(_scalar(v, params) for v in row) for row in gram))

    samples = []
    for n, sample in enumerate(model.samples):
        unknown = sorted(set(sample) - set(params))
        if unknown:
            raise _field(f"samples.{n}", f"undeclared parameters {unknown}", "undeclared_parameter")
        samples.append({k: parse_rational(v) for k, v in sample.items()})

    return HomogeneousSpaceSpec(
        name=model.name,
        algebra=algebra,
        q=q,
        h_basis=h_basis,
        m_basis=m_basis,
        m_labels=tuple(model.m_labels) if model.m_labels is not None else None,
        blocks=tuple(Block(b.name, tuple(b.indices)) for b in model.blocks),
        metric=metric,
        parameters=params,
        samples=tuple(samples),
        notes=tuple(model.notes),
    )


def validated_space(spec: HomogeneousSpaceSpec) -> HomogeneousSpace:
    """Algebra, Q, reductive split and blocks, then the metric at the declared samples."""
    space = prepare_space(spec)
    validate_metric(space, metric_from_space(space), spec.samples)
    logger.info(f"Validated '{spec.name}': dim g = {spec.algebra.dim}, dim m = {space.dim_m}, {len(space.blocks)} blocks")
    return space


def load_space(name: str) -> HomogeneousSpace:
    source = _read_source(name)
    if source is None:
        stem = os.path.basename(name)
        key = stem[:-5] if stem.endswith(".json") else stem
        if key in CATALOG:
            logger.info(f"'{name}' resolved to the bundled catalog")
            return validated_space(bundled_spec(key))
        raise SpecParseError(f"No spec file or bundled space named '{name}'", code="missing_file",
                             details={"bundled": sorted(CATALOG)})
    text, path = source
    data = load_json(text, path)
    try:
        model = SpecFile.model_validate(data)
    except ValidationError as exc:
        raise _from_pydantic(exc, path) from exc
    return validated_space(spec_from_model(model))


def parse_spec(name: str) -> HomogeneousSpaceSpec:
    """The fully validated spec behind a file path or bundled name."""
    return load_space(name).spec


def parse_dga(name: str) -> AbstractDGA:
    source = _read_source(name)
    if source is None:
        stem = os.path.basename(name)
        key = stem[:-5] if stem.endswith(".json") else stem
        tables = {f"{label}_table": k for k, label in FLAG_DEGREES.items()}
        if key in tables:
            return load_dga(flag_table_data(tables[key]))
        raise SpecParseError(f"No table file or bundled table named '{name}'", code="missing_file",
                             details={"bundled": sorted(tables)})
    text, path = source
    try:
        model = DgaFile.model_validate(load_json(text, path))
    except ValidationError as exc:
        raise _from_pydantic(exc, path) from exc
    return load_dga(model.model_dump(exclude={"kind"}))


# --- Writing specs ---


def _text(value: Scalar) -> str:
    return scalar_text(value)


def spec_to_dict(spec: HomogeneousSpaceSpec) -> Dict[str, Any]:
    a = spec.algebra
    out: Dict[str, Any] = {
        "name": spec.name,
        "algebra": {
            "dim": a.dim,
            "labels": list(a.labels),
            "brackets": [[i, j, [[k, _text(c)] for k, c in sorted(vec.items())]] for i, j, vec in a.triples()],
        },
        "q_form": [[_text(x) for x in row] for row in spec.q.gram],
        "h_basis": [[_text(x) for x in v] for v in spec.h_basis],
    }
    if spec.m_basis is not None:
        out["m_basis"] = [[_text(x) for x in v] for v in spec.m_basis]
    if spec.m_labels is not None:
        out["m_labels"] = list(spec.m_labels)
    out["blocks"] = [{"name": b.name, "indices": list(b.indices)} for b in spec.blocks]
    if spec.metric is not None:
        if spec.metric.weights is not None:
            out["metric"] = {"weights": {k: _text(v) for k, v in spec.metric.weights.items()}}
        else:
            out["metric"] = {"gram": [[_text(x) for x in row] for row in spec.metric.gram or ()]}
    out["parameters"] = list(spec.parameters)
    out["samples"] = [{k: _text(v) for k, v in s.items()} for s in spec.samples]
    out["notes"] = list(spec.notes)
    return out


def dumps(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2) + "\n"


def write_catalog(directory: str) -> List[str]:
    """Write every bundled space and table as JSON; returns the written paths in order."""
    os.makedirs(directory, exist_ok=True)
    written = []
    documents: Dict[str, Dict[str, Any]] = {name: spec_to_dict(spec) for name, spec in bundled_specs().items()}
    for name, dga in bundled_tables().items():
        documents[name] = {"kind": "dga", **dga_to_dict(dga)}
    for name, document in documents.items():
        path = os.path.join(directory, f"{name}.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(document))
        written.append(path)
    logger.info(f"Wrote {len(written)} catalog files to {directory}")
    return written


# --- Report sections ---


def form_space_model(space: HomogeneousSpace, fs: FormSpace) -> FormSpaceModel:
    return FormSpaceModel(
        degree=fs.degree,
        role=fs.role,
        dim=fs.dim,
        forms=[f.to_text(space.m_labels) for f in fs.basis],
        coordinates=[[_text(x) for x in row] for row in fs.coordinates],
        pivots=[str(p) for p in fs.pivots],
    )


def betti_model(b: BettiVector) -> BettiModel:
    numbers = list(b.numbers)
    return BettiModel(
        betti=numbers,
        invariant_dims=list(b.invariant_dims),
        euler_characteristic=b.euler_characteristic,
        poincare_duality=numbers == numbers[::-1],
    )


def formality_model(report: FormalityReport) -> FormalityModel:
    return FormalityModel(
        verdict=report.verdict,
        reason=report.reason,
        witnesses=[
            WitnessModel(
                degrees=list(w.degrees),
                indices=list(w.indices),
                product=w.product,
                exact_index=w.exact_index,
                pairing=_text(w.pairing) if w.pairing is not None else None,
                primitive=w.primitive,
                note=w.note,
            )
            for w in report.witnesses
        ],
        obstructions=[str(p) for p in report.obstructions],
        assumptions=list(report.assumptions),
        checked_degrees=[list(d) for d in report.checked_degrees],
    )


def _root(r: RootInterval) -> RootModel:
    return RootModel(lower=str(r.lower), upper=str(r.upper), exact=r.exact)


def obstruction_model(report: ObstructionReport) -> ObstructionReportModel:
    return ObstructionReportModel(
        degrees=list(report.degrees),
        products_tested=report.products_tested,
        obstructions=[
            ObstructionModel(
                polynomial=str(o.polynomial),
                univariate=o.univariate,
                real_roots=[_root(r) for r in o.real_roots],
                positive_roots=[_root(r) for r in o.positive_roots],
            )
            for o in report.obstructions
        ],
        pivots=[str(p) for p in report.pivots],
    )


def system_model(system: PolySystem) -> PolySystemModel:
    return PolySystemModel(
        degree=system.degree,
        power=system.power,
        space=system.space,
        variables=list(system.variables),
        basis=list(system.basis),
        generators=[str(g) for g in system.generators],
    )


def triviality_model(verdict: TrivialityVerdict) -> TrivialityModel:
    return TrivialityModel(
        status=verdict.status,
        reason=verdict.reason,
        witness=[str(x) for x in verdict.witness] if verdict.witness is not None else None,
        derivation=[DerivationStepModel(kind=s.kind, statement=s.statement) for s in verdict.derivation],
    )


def emit_report(report: BaseModel, output: Optional[str] = None) -> str:
    """Serialize a report; written to `output` when given, returned either way."""
    text = report.model_dump_json(indent=2, exclude_none=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
        logger.info(f"Report written to {output}")
    return text


def read_report(text: str) -> Report:
    return Report.model_validate_json(text)


def form_spaces_section(space: HomogeneousSpace, spaces: Sequence[FormSpace]) -> List[FormSpaceModel]:
    return [form_space_model(space, fs) for fs in spaces]
