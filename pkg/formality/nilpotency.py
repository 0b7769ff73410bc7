# ---- File: formality/nilpotency.py ----

"""Vanishing powers of closed forms and the triviality of the resulting polynomial systems.

`nilpotency_analysis` expands (a_1 b_1 + ... + a_m b_m)^p over the invariant
basis of degree p*k and returns the coefficient polynomials. `triviality`
decides whether such a system only has the zero solution, in tiers:

  (a)  every pure power a_i^p lies in the linear span of the generators
       (monomials treated as independent coordinates);
  (a') zero propagation: sign-definite even-power generators force their
       variables to vanish, single-monomial generators split into cases;
  (b)  bounded search for a nonzero rational witness;
  (c)  Undecided.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from algebra.linalg import SparseEchelon
from algebra.polynomial import Exponents, Poly
from config import settings
from errors import StructuralError
from forms.exterior import Form, Indices
from formality.reports import NONTRIVIAL, TRIVIAL, UNDECIDED, DerivationStep, PolySystem, TrivialityVerdict
from invariants.complex import invariant_complex
from lie.space import HomogeneousSpace

logger = logging.getLogger(__name__)

PolyForm = Dict[Indices, Poly]


# --- Symbolic powers ---


def _wedge_linear(left: PolyForm, forms: Sequence[Form], variables: Sequence[Poly], dim: int) -> PolyForm:
    """left ^ (sum_i variables[i] * forms[i]) with polynomial coefficients."""
    out: PolyForm = {}
    for key_a, pa in left.items():
        set_a = set(key_a)
        for var, form in zip(variables, forms):
            for key_b, vb in form.coeffs.items():
                if set_a.intersection(key_b):
                    continue
                inversions = sum(1 for i in key_a for j in key_b if i > j)
                key = tuple(sorted(key_a + key_b))
                term = pa * var * (-vb if inversions % 2 else vb)
                total = out[key] + term if key in out else term
                if total.is_zero:
                    out.pop(key, None)
                else:
                    out[key] = total
    return out


def nilpotency_analysis(space: HomogeneousSpace, degree: int, power: int, basis_space: str = "closed") -> PolySystem:
    """Coefficient polynomials of the p-th wedge power of a generic closed (or invariant) k-form."""
    if power < 1:
        raise StructuralError(f"Power must be positive, got {power}")
    if basis_space not in ("closed", "invariant"):
        raise StructuralError(f"Unknown coordinate space '{basis_space}'; use 'closed' or 'invariant'")
    cx = invariant_complex(space)
    source = cx.closed(degree) if basis_space == "closed" else cx.invariant(degree)
    names = tuple(f"a{i + 1}" for i in range(source.dim))
    labels = tuple(f.to_text(space.m_labels) for f in source.basis)
    target = degree * power
    if target > space.dim_m or not names:
        return PolySystem(names, (), degree, power, basis_space, labels)

    variables = [Poly.variable(names, n) for n in names]
    forms = list(source.basis)
    current: PolyForm = {(): Poly.one(names)}
    for _ in range(power):
        current = _wedge_linear(current, forms, variables, space.dim_m)

    pivots = cx.pivots(target)
    generators = tuple(current[p] for p in pivots if p in current)
    logger.info(
        f"nilpotency on '{space.name}': degree {degree}, power {power}, {len(names)} variables -> {len(generators)} generators"
    )
    return PolySystem(names, generators, degree, power, basis_space, labels)


# --- Tier (a): pure powers in the span of the generators ---


def _pure_power(names: Sequence[str], index: int, p: int) -> Exponents:
    return tuple(p if i == index else 0 for i in range(len(names)))


def _span_derivation(system: PolySystem) -> Optional[List[DerivationStep]]:
    names = system.variables
    if not system.generators:
        return None
    p = system.generators[0].total_degree()
    echelon = SparseEchelon()
    for idx, g in enumerate(system.generators):
        echelon.insert(g.terms, label=idx)
    steps: List[DerivationStep] = []
    for i, name in enumerate(names):
        target = _pure_power(names, i, p)
        residual, combo = echelon.reduce({target: Fraction(1)})
        if residual:
            return None
        coefficients = {int(k): -v for k, v in combo.items()}  # type: ignore[call-overload]
        rebuilt = Poly.zero(names)
        for k, c in coefficients.items():
            rebuilt = rebuilt + system.generators[k].scale(c)
        if rebuilt != Poly.monomial(names, target):
            raise StructuralError(f"Derivation of {name}^{p} does not re-verify")
        text = " + ".join(f"({c})*g{k}" for k, c in sorted(coefficients.items()))
        steps.append(DerivationStep("span", f"{name}^{p} = {text}", coefficients))
    return steps


# --- Tier (a'): zero propagation ---


@dataclass
class PropagationResult:
    closed: bool
    steps: List[DerivationStep]
    witness: Optional[Dict[str, Fraction]] = None


def _sign_definite_variables(g: Poly) -> Optional[List[str]]:
    """Variables forced to zero by g = 0 when g is a one-signed sum of even pure powers."""
    signs = set()
    names: List[str] = []
    for exps, c in g.terms.items():
        used = [i for i, e in enumerate(exps) if e]
        if len(used) != 1 or exps[used[0]] % 2:
            return None
        signs.add(c > 0)
        names.append(g.parameters[used[0]])
    if len(signs) != 1:
        return None
    return sorted(set(names))


def propagate_zeros(
    generators: Sequence[Poly],
    variables: Sequence[str],
    closes: Callable[[FrozenSet[str]], bool],
    depth: Optional[int] = None,
    zeros: FrozenSet[str] = frozenset(),
) -> PropagationResult:
    """Case split on forced zeros; a branch is closed once `closes(zero set)` holds."""
    depth = settings.branch_depth if depth is None else depth
    if closes(zeros):
        return PropagationResult(True, [DerivationStep("closed", f"branch {sorted(zeros)} = 0 closes")])
    substitution = {v: 0 for v in zeros}
    remaining = [g.substitute(substitution) for g in generators]
    remaining = [g for g in remaining if not g.is_zero]
    for g in remaining:
        if g.is_constant:
            return PropagationResult(True, [DerivationStep("closed", f"branch {sorted(zeros)} = 0 is inconsistent ({g} = 0)")])
    if not remaining:
        point = {v: Fraction(0) if v in zeros else Fraction(1) for v in variables}
        return PropagationResult(False, [DerivationStep("open", f"branch {sorted(zeros)} = 0 satisfies every generator")], point)
    if depth <= 0:
        return PropagationResult(False, [DerivationStep("open", f"branch {sorted(zeros)} = 0 exceeds the branch depth")])

    for g in remaining:
        forced = _sign_definite_variables(g)
        if forced:
            step = DerivationStep("forced", f"{g} = 0 forces {', '.join(forced)} = 0")
            sub = propagate_zeros(generators, variables, closes, depth - 1, zeros | frozenset(forced))
            return PropagationResult(sub.closed, [step] + sub.steps, sub.witness)

    for g in remaining:
        if len(g.terms) == 1:
            factors = list(g.variables_used())
            steps = [DerivationStep("split", f"{g} = 0 splits into {' | '.join(f'{v} = 0' for v in factors)}")]
            for v in factors:
                sub = propagate_zeros(generators, variables, closes, depth - 1, zeros | {v})
                steps.extend(sub.steps)
                if not sub.closed:
                    return PropagationResult(False, steps, sub.witness)
            return PropagationResult(True, steps)

    return PropagationResult(
        False, [DerivationStep("open", f"branch {sorted(zeros)} = 0 has no forcing generator: {', '.join(map(str, remaining))}")]
    )


# --- Tier (b): bounded witness search ---


def _compiled(generators: Sequence[Poly]) -> List[List[Tuple[Fraction, Exponents]]]:
    return [[(c, e) for e, c in g.terms.items()] for g in generators]


def _vanishes(compiled: List[List[Tuple[Fraction, Exponents]]], point: Sequence[int]) -> bool:
    for terms in compiled:
        total = Fraction(0)
        for c, exps in terms:
            value = 1
            for x, e in zip(point, exps):
                if e:
                    value *= x ** e
            total += c * value
        if total:
            return False
    return True


def search_witness(
    generators: Sequence[Poly],
    n_variables: int,
    accept: Optional[Callable[[Tuple[int, ...]], bool]] = None,
) -> Optional[Tuple[Fraction, ...]]:
    """Smallest-support, smallest-height integer point where every generator vanishes."""
    compiled = _compiled(generators)
    widest = min(n_variables, settings.witness_max_support)
    for size in range(1, widest + 1):
        height = settings.witness_height if size <= 2 else settings.witness_height_wide
        for support in combinations(range(n_variables), size):
            for values in _points(size, height):
                point = [0] * n_variables
                for i, v in zip(support, values):
                    point[i] = v
                if _vanishes(compiled, point) and (accept is None or accept(tuple(point))):
                    return tuple(Fraction(x) for x in point)
    return None


def _points(size: int, height: int):
    """Nonzero integer tuples with first entry positive and gcd 1, by growing height."""
    for h in range(1, height + 1):
        ranges = [range(1, h + 1)] + [[v for v in range(-h, h + 1) if v] for _ in range(size - 1)]
        for values in product(*ranges):
            if max(abs(v) for v in values) != h:
                continue
            g = 0
            for v in values:
                g = gcd(g, v)
            if g == 1:
                yield values


# --- Decision ---


def triviality(system: PolySystem) -> TrivialityVerdict:
    names = system.variables
    if not names:
        return TrivialityVerdict(TRIVIAL, reason="no variables")
    if not system.generators:
        witness = tuple(Fraction(1 if i == 0 else 0) for i in range(len(names)))
        return TrivialityVerdict(NONTRIVIAL, witness=witness, reason="empty system")

    steps = _span_derivation(system)
    if steps is not None:
        logger.info(f"Triviality by linear span: {len(steps)} pure powers derived")
        return TrivialityVerdict(TRIVIAL, derivation=steps, reason="every pure power lies in the span of the generators")

    everything = frozenset(names)
    propagation = propagate_zeros(system.generators, names, lambda zeros: zeros >= everything)
    if propagation.closed:
        return TrivialityVerdict(TRIVIAL, derivation=propagation.steps, reason="every branch forces all variables to zero")
    witness = search_witness(system.generators, len(names))
    if witness is None and propagation.witness is not None and any(propagation.witness.values()):
        witness = tuple(propagation.witness[n] for n in names)
        return TrivialityVerdict(NONTRIVIAL, witness=witness, derivation=propagation.steps, reason="open branch")
    if witness is not None:
        return TrivialityVerdict(NONTRIVIAL, witness=witness, reason="rational witness found by bounded search")
    return TrivialityVerdict(
        UNDECIDED,
        derivation=propagation.steps,
        reason="no derivation and no witness within the search bounds: " + "; ".join(str(g) for g in system.generators),
    )
