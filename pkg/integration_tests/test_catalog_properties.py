import random
import pytest
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from hypothesis import given, settings as hsettings, strategies as st

from catalog.spaces import CATALOG, bundled_spec
from formality.check import formality_check, obstruction_holds, parametric_obstruction
from formality.reports import NOT_FORMAL
from forms.differential import d_form, d_product_rule
from forms.exterior import Form, wedge
from forms.metric import inner_product, metric_from_space, random_block_metrics
from invariants.complex import betti, harmonic_space, invariant_complex, invariant_forms
from lie.space import prepare_space


def _catalog(names):
    """Parametrize over bundled spaces; the 13-dimensional Berger space runs with the slow tests."""
    return [pytest.param(n, marks=pytest.mark.slow) if n == "berger13" else n for n in names]


ALL_SPACES = _catalog(sorted(CATALOG))
PARAMETRIC_SPACES = _catalog(["aloff_wallach", "aloff_wallach_1_2_m3", "aloff_wallach_1_m1_0", "berger13", "cp3", "flag_w6"])


@lru_cache(maxsize=None)
def _space(name):
    return prepare_space(bundled_spec(name))


@lru_cache(maxsize=None)
def _betti(name):
    return betti(_space(name)).numbers


def _random_form(data, dim, degree):
    keys = list(combinations(range(dim), degree))
    coeffs = data.draw(st.dictionaries(st.sampled_from(keys), st.integers(-3, 3), max_size=3))
    return Form(dim, degree, coeffs)


def _parameter_points(space, count=5, seed=7):
    """The all-ones point first, then deterministic random positive rationals."""
    rng = random.Random(seed)
    points = [{p: Fraction(1) for p in space.parameters}]
    while len(points) < count:
        points.append({p: Fraction(rng.randint(1, 9), rng.randint(1, 4)) for p in space.parameters})
    return points


# --- Differential ---

@pytest.mark.parametrize("name", ALL_SPACES)
def test_d_squared_vanishes_on_invariant_forms(name):
    space = _space(name)
    for k in range(space.dim_m - 1):
        for f in invariant_forms(space, k).basis:
            assert d_form(space, d_form(space, f)).is_zero


@pytest.mark.parametrize("name", ALL_SPACES)
@given(data=st.data())
@hsettings(max_examples=200, deadline=None)
def test_product_rule_on_random_pairs(name, data):
    space = _space(name)
    n = space.dim_m
    p, q = data.draw(st.integers(1, 2)), data.draw(st.integers(1, 2))
    a, b = _random_form(data, n, p), _random_form(data, n, q)
    left = d_form(space, wedge(a, b))
    right = wedge(d_form(space, a), b) + wedge(a, d_form(space, b)).scale((-1) ** p)
    assert left == right
    assert d_product_rule(space, wedge(a, b)) == left


# --- Harmonic forms ---

@pytest.mark.parametrize("name", ALL_SPACES)
def test_harmonic_dimension_is_betti_at_random_metrics(name):
    space = _space(name)
    b = _betti(name)
    for g in random_block_metrics(space, 10, seed=23):
        for k in range(1, space.dim_m):
            assert harmonic_space(space, k, g).dim == b[k]


# --- Parametric obstructions against rational verdicts ---

def _products_are_harmonic(space, degrees, g):
    k1, k2 = degrees
    h1, h2 = harmonic_space(space, k1, g), harmonic_space(space, k2, g)
    exact = invariant_complex(space).exact(k1 + k2)
    for a in h1.basis:
        for b in h2.basis:
            product = wedge(a, b)
            if any(inner_product(product, e, g) != 0 for e in exact.basis):
                return False
    return True


@pytest.mark.parametrize("name", PARAMETRIC_SPACES)
def test_parametric_obstruction_agrees_with_rational_metrics(name):
    space = _space(name)
    b = _betti(name)
    g = metric_from_space(space)
    degrees = [k for k in range(1, space.dim_m) if b[k]]
    pairs = [(k1, k2) for k1, k2 in combinations_with_replacement(degrees, 2) if k1 + k2 < space.dim_m]
    reports = [parametric_obstruction(space, pair, g) for pair in pairs]
    for point in _parameter_points(space):
        if any(p.evaluate(point) == 0 for r in reports for p in r.pivots):
            continue
        numeric = g.specialize(point)
        holds = [obstruction_holds(r, point) for r in reports]
        for pair, expected in zip(pairs, holds):
            assert _products_are_harmonic(space, pair, numeric) == expected
        if not all(holds):
            assert formality_check(space, numeric).verdict == NOT_FORMAL
