# ---- File: commands.py ----

"""One handler per subcommand. Each returns the report and whether its verdict is negative."""

import argparse
import logging
from typing import Callable, Dict, List, Optional, Tuple

from config import settings
from errors import StructuralError
from formality.check import formality_check, parametric_obstruction
from formality.dga import abstract_check
from formality.nilpotency import nilpotency_analysis, triviality
from formality.reports import NONTRIVIAL, NOT_FORMAL
from forms.metric import MetricOnM, metric_from_space, random_block_metrics
from invariants.complex import betti, closed_and_exact, differential_table, harmonic_space, invariant_forms
from lie.space import HomogeneousSpace
from schemas.report import Report, SampleCheckModel
from spec_io import (
    betti_model,
    form_spaces_section,
    formality_model,
    load_space,
    obstruction_model,
    parse_dga,
    system_model,
    triviality_model,
    write_catalog,
)
from utils import parse_assignments

logger = logging.getLogger(__name__)

Outcome = Tuple[Report, bool]


# --- Helpers ---


def _metric(space: HomogeneousSpace, args: argparse.Namespace) -> Tuple[MetricOnM, Dict[str, str]]:
    values = parse_assignments(getattr(args, "set", None), space.parameters)
    g = metric_from_space(space, values)
    if values:
        logger.info(f"Metric specialized at {', '.join(f'{k}={v}' for k, v in values.items())}")
    return g, {k: str(v) for k, v in values.items()}


def _degrees(space: HomogeneousSpace, args: argparse.Namespace) -> List[int]:
    if args.degree is not None:
        if not 0 <= args.degree <= space.dim_m:
            raise StructuralError(f"Degree {args.degree} outside 0..{space.dim_m}")
        return [args.degree]
    return list(range(1, space.dim_m))


def _report(command: str, space: HomogeneousSpace, **sections) -> Report:
    return Report(command=command, space=space.name, parameters=list(space.parameters), notes=list(space.spec.notes), **sections)


# --- Handlers ---


def run_validate(args: argparse.Namespace) -> Outcome:
    space = load_space(args.spec)
    checks = [
        "bracket antisymmetry and Jacobi identity",
        "Q symmetric, positive definite and ad-invariant",
        f"h is a subalgebra of dimension {space.dim_h} with Q-orthogonal complement m of dimension {space.dim_m}",
        f"{len(space.blocks)} blocks partition m and are isotropy-invariant",
        "metric positive definite and isotropy-invariant" + (" at the declared samples" if space.parameters else ""),
    ]
    return _report("validate", space, validation=checks), False


def run_betti(args: argparse.Namespace) -> Outcome:
    space = load_space(args.spec)
    b = betti(space)
    print(f"{space.name}: b = {b}", file=args.summary)
    return _report("betti", space, betti=betti_model(b)), False


def run_invariant(args: argparse.Namespace) -> Outcome:
    space = load_space(args.spec)
    spaces = []
    differential = None
    if args.degree is None:
        spaces = [invariant_forms(space, k) for k in range(space.dim_m + 1)]
    else:
        k = _degrees(space, args)[0]
        closed, exact = closed_and_exact(space, k)
        spaces = [invariant_forms(space, k), closed, exact]
        if k < space.dim_m:
            _, _, matrix = differential_table(space, k)
            differential = [[str(x) for x in row] for row in matrix.entries]
    print(f"{space.name}: invariant dims {[s.dim for s in spaces]}", file=args.summary)
    return _report("invariant", space, form_spaces=form_spaces_section(space, spaces), differential=differential), False


def run_harmonic(args: argparse.Namespace) -> Outcome:
    space = load_space(args.spec)
    g, specialized = _metric(space, args)
    degrees = _degrees(space, args)
    found = [harmonic_space(space, k, g) for k in degrees]
    found = [h for h in found if h.dim or args.degree is not None]

    samples: List[SampleCheckModel] = []
    count = settings.metric_samples if args.check_samples is None else args.check_samples
    if count:
        b = betti(space).numbers
        for n, metric in enumerate(random_block_metrics(space, count, settings.sample_seed)):
            for k in degrees:
                dim = harmonic_space(space, k, metric).dim
                samples.append(SampleCheckModel(sample=n, dim=dim, betti=b[k], agrees=dim == b[k]))
    print(f"{space.name}: harmonic dims {[(h.degree, h.dim) for h in found]}", file=args.summary)
    report = _report("harmonic", space, specialized=specialized, form_spaces=form_spaces_section(space, found), samples=samples)
    return report, not all(s.agrees for s in samples)


def _harmonic_pairs(space: HomogeneousSpace, top: int) -> List[Tuple[int, int]]:
    b = betti(space).numbers
    degrees = [k for k in range(1, space.dim_m) if b[k]]
    return [(k1, k2) for i, k1 in enumerate(degrees) for k2 in degrees[i:] if k1 + k2 <= top]


def run_formality(args: argparse.Namespace) -> Outcome:
    space = load_space(args.spec)
    g, specialized = _metric(space, args)
    if args.parametric:
        top = space.dim_m if args.max_degree is None else args.max_degree
        pairs = [(args.degree, args.degree)] if args.degree is not None else _harmonic_pairs(space, top)
        reports = [parametric_obstruction(space, pair, g) for pair in pairs]
        never = any(o.polynomial.is_constant for r in reports for o in r.obstructions)
        for r in reports:
            print(f"{space.name} {r.degrees}: {[str(p) for p in r.polynomials] or 'no obstruction'}", file=args.summary)
        report = _report("formality", space, specialized=specialized, obstructions=[obstruction_model(r) for r in reports])
        return report, never

    result = formality_check(space, g, args.max_degree)
    print(f"{space.name}: {result.verdict} ({result.reason})", file=args.summary)
    report = _report("formality", space, specialized=specialized, formality=formality_model(result))
    return report, result.verdict == NOT_FORMAL


def run_nilpotency(args: argparse.Namespace) -> Outcome:
    space = load_space(args.spec)
    if args.degree is None:
        raise StructuralError("nilpotency needs --degree")
    system = nilpotency_analysis(space, args.degree, args.power, args.basis)
    verdict = triviality(system)
    print(f"{space.name}: degree {args.degree}, power {args.power}: {verdict.status}", file=args.summary)
    report = _report("nilpotency", space, system=system_model(system), triviality=triviality_model(verdict))
    return report, verdict.status == NONTRIVIAL


def run_abstract(args: argparse.Namespace) -> Outcome:
    dga = parse_dga(args.spec)
    result = abstract_check(dga)
    b = dga.betti()
    print(f"{dga.name}: {result.verdict} ({result.reason})", file=args.summary)
    report = Report(
        command="abstract",
        space=dga.name,
        formality=formality_model(result),
        notes=list(dga.notes) + [f"b_{k} = {v}" for k, v in sorted(b.items()) if v],
    )
    return report, result.verdict == NOT_FORMAL


def run_catalog(args: argparse.Namespace) -> Outcome:
    directory = args.spec or "catalog_specs"
    paths = write_catalog(directory)
    print(f"wrote {len(paths)} files to {directory}", file=args.summary)
    return Report(command="catalog", space=directory, catalog=paths), False


HANDLERS: Dict[str, Callable[[argparse.Namespace], Outcome]] = {
    "validate": run_validate,
    "betti": run_betti,
    "invariant": run_invariant,
    "harmonic": run_harmonic,
    "formality": run_formality,
    "nilpotency": run_nilpotency,
    "abstract": run_abstract,
    "catalog": run_catalog,
}


def dispatch(args: argparse.Namespace) -> Outcome:
    handler: Optional[Callable[[argparse.Namespace], Outcome]] = HANDLERS.get(args.command)
    if handler is None:
        raise StructuralError(f"Unknown subcommand '{args.command}'")
    return handler(args)
