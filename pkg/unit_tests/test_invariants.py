import pytest
from fractions import Fraction

from algebra.expressions import parse_poly
from algebra.scalars import RatFunc
from catalog.spaces import aloff_wallach, cp3, flag_w6, sphere5
from forms.differential import d_form
from forms.exterior import Form, act_on_form
from forms.metric import inner_product, metric_from_space, random_block_metrics
from invariants.complex import (
    _normalized,
    betti,
    closed_and_exact,
    differential_table,
    euler_characteristic,
    exact_primitive,
    harmonic_space,
    invariant_complex,
    invariant_forms,
)
from lie.space import prepare_space


@pytest.fixture(scope="module")
def aw():
    return prepare_space(aloff_wallach(-2, 1, 1))


@pytest.fixture(scope="module")
def aw_generic():
    return prepare_space(aloff_wallach(1, 2, -3))


@pytest.fixture(scope="module")
def w6():
    return prepare_space(flag_w6())


@pytest.fixture(scope="module")
def s5():
    return prepare_space(sphere5())


@pytest.fixture(scope="module")
def cp():
    return prepare_space(cp3())


# --- Invariant forms ---

def test_constants_are_invariant(w6):
    space = invariant_forms(w6, 0)
    assert space.dim == 1
    assert space.basis[0] == Form.one(6)


def test_flag_has_three_invariant_two_forms(w6):
    assert invariant_forms(w6, 1).dim == 0
    assert invariant_forms(w6, 2).dim == 3
    assert {key for f in invariant_forms(w6, 2).basis for key, _ in f.terms()} == {(0, 1), (2, 3), (4, 5)}


def test_trivial_isotropy_block_adds_one_forms(aw, aw_generic):
    # k = (-2, 1, 1) fixes V3 pointwise
    assert invariant_forms(aw, 1).dim == 3
    assert invariant_forms(aw_generic, 1).dim == 1
    assert invariant_forms(aw, 2).dim == 7


def test_invariant_forms_are_annihilated_by_isotropy(aw):
    cx = invariant_complex(aw)
    for cols in aw.isotropy_generators():
        for k in range(aw.dim_m + 1):
            for f in cx.basis(k):
                assert act_on_form(cols, f).is_zero


def test_d_squared_vanishes_on_invariant_forms(aw, cp):
    for space in (aw, cp):
        for k in range(space.dim_m - 1):
            for f in invariant_forms(space, k).basis:
                assert d_form(space, d_form(space, f)).is_zero


def test_d_squared_fails_off_the_invariant_complex(aw):
    n = aw.dim_m
    assert any(not d_form(aw, d_form(aw, Form.basis_oneform(n, i))).is_zero for i in range(n))


# --- Closed, exact, Betti ---

def test_closed_and_exact_two_forms(aw, w6):
    closed, exact = closed_and_exact(aw, 2)
    assert (closed.dim, exact.dim) == (4, 3)
    closed, exact = closed_and_exact(w6, 2)
    assert (closed.dim, exact.dim) == (2, 0)


def test_differential_table_shape(w6):
    src, tgt, matrix = differential_table(w6, 2)
    assert (matrix.rows, matrix.cols) == (tgt.dim, src.dim)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("w6", (1, 0, 2, 0, 2, 0, 1)),
        ("s5", (1, 0, 0, 0, 0, 1)),
        ("aw", (1, 0, 1, 0, 0, 1, 0, 1)),
        ("aw_generic", (1, 0, 1, 0, 0, 1, 0, 1)),
        ("cp", (1, 0, 1, 0, 1, 0, 1)),
    ],
)
def test_betti_numbers(request, name, expected):
    space = request.getfixturevalue(name)
    b = betti(space)
    assert b.numbers == expected
    assert b.numbers == tuple(reversed(b.numbers))
    assert b.euler_characteristic == euler_characteristic(space)


def test_exact_primitive(aw):
    closed, exact = closed_and_exact(aw, 2)
    for form in exact.basis:
        eta = exact_primitive(aw, form)
        assert eta is not None
        assert d_form(aw, eta) == form
    assert any(exact_primitive(aw, form) is None for form in closed.basis)


# --- Harmonic forms ---

def test_harmonic_dimension_matches_betti(aw_generic, w6):
    for space in (aw_generic, w6):
        b = betti(space).numbers
        for g in random_block_metrics(space, 3, seed=11):
            for k in range(1, space.dim_m):
                assert harmonic_space(space, k, g).dim == b[k]


def test_harmonic_forms_are_orthogonal_to_exact_forms(aw):
    g = metric_from_space(aw, {"t1": Fraction(1), "t2": Fraction(2), "t3": Fraction(3)})
    h = harmonic_space(aw, 2, g)
    _, exact = closed_and_exact(aw, 2)
    assert h.dim == 1
    for e in exact.basis:
        assert inner_product(h.basis[0], e, g) == 0


def test_harmonic_forms_ignore_global_scaling(aw):
    g = metric_from_space(aw, {"t1": Fraction(1), "t2": Fraction(1, 2), "t3": Fraction(5)})
    assert harmonic_space(aw, 2, g).basis == harmonic_space(aw, 2, g.scaled(Fraction(7))).basis


def test_parametric_harmonic_space_is_generic(w6):
    g = metric_from_space(w6)
    assert g.is_parametric
    assert harmonic_space(w6, 2, g).dim == 2


def test_normalizing_entry_is_reported_as_degenerate():
    t = RatFunc.variable(("t",), "t")
    vector, excluded = _normalized((Fraction(0), t - 2, Fraction(1)))
    assert vector[0] == 0
    assert vector[1] == 1
    assert parse_poly("t - 2", ("t",)) in [p.normalized_factor() for p in excluded if not p.is_constant]


@pytest.mark.parametrize(
    "point",
    [("1", "2", "3"), ("1/2", "3/2", "2"), ("2", "1", "5"), ("3", "1/3", "1"), ("1", "1", "1")],
)
def test_parametric_harmonic_forms_specialize_off_the_pivots(aw_generic, point):
    g = metric_from_space(aw_generic)
    h = harmonic_space(aw_generic, 2, g)
    values = {name: Fraction(v) for name, v in zip(("t1", "t2", "t3"), point)}
    if any(p.evaluate(values) == 0 for p in h.pivots):
        pytest.skip("point lies on a reported degenerate locus")
    numeric = harmonic_space(aw_generic, 2, g.specialize(values))
    assert h.dim == numeric.dim == 1
    assert h.basis[0].specialize(values) == numeric.basis[0]
