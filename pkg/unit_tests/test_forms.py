import pytest
from fractions import Fraction
from itertools import combinations
from hypothesis import given, settings as hsettings, strategies as st

from algebra.linalg import ScalarMatrix
from algebra.scalars import RatFunc
from catalog.spaces import aloff_wallach, cp3, flag_w6
from errors import StructuralError, ValidationFailure
from forms.differential import d_basis_oneform, d_form, d_product_rule
from forms.exterior import Form, act_on_form, power, sort_with_sign, wedge
from forms.metric import MetricOnM, block_metric, inner_product, metric_from_space, random_block_metrics, validate_metric
from lie.space import prepare_space

AW = prepare_space(aloff_wallach(-2, 1, 1))
W6 = prepare_space(flag_w6())


def forms_of(dim, degree):
    keys = list(combinations(range(dim), degree))
    return st.dictionaries(st.sampled_from(keys), st.integers(-3, 3), max_size=4).map(
        lambda coeffs: Form(dim, degree, coeffs)
    )


# --- Exterior algebra ---

def test_sort_with_sign():
    assert sort_with_sign([2, 0, 1]) == (1, (0, 1, 2))
    assert sort_with_sign([1, 0]) == (-1, (0, 1))
    assert sort_with_sign([1, 1]) == (0, None)


def test_wedge_of_oneforms_anticommutes():
    a, b = Form.basis_oneform(4, 0), Form.basis_oneform(4, 2)
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero


def test_index_tuples_are_checked():
    with pytest.raises(StructuralError):
        Form(3, 2, {(1, 0): 1})


def test_power_of_symplectic_form():
    omega = Form(4, 2, {(0, 1): 1, (2, 3): 1})
    assert power(omega, 2) == Form(4, 4, {(0, 1, 2, 3): 2})
    assert power(omega, 3).is_zero


def test_parametric_coefficients_specialize():
    t = RatFunc.variable(("t",), "t")
    w = Form(3, 1, {(0,): t, (2,): 1})
    assert w.is_parametric
    assert w.specialize({"t": Fraction(1, 2)}) == Form(3, 1, {(0,): Fraction(1, 2), (2,): 1})


def test_to_text_uses_labels():
    assert Form(2, 2, {(0, 1): -1}).to_text(("X", "Y")) == "-1*X^Y"
    assert str(Form.zero(2, 1)) == "0"


@given(forms_of(5, 2), forms_of(5, 1))
@hsettings(max_examples=50, deadline=None)
def test_even_forms_commute(a, b):
    assert wedge(a, b) == wedge(b, a)


def test_isotropy_action_kills_invariant_forms():
    # e^E1 ^ e^F1 is invariant under the maximal torus of su(3)
    cols = W6.isotropy_columns({6: Fraction(1)})
    assert act_on_form(cols, Form(6, 2, {(0, 1): 1})).is_zero
    assert not act_on_form(cols, Form(6, 1, {(0,): 1})).is_zero


# --- Differential ---

def test_d_of_oneforms_on_flag():
    # only V2 and V3 bracket into V1
    d_e1 = d_basis_oneform(W6, 0)
    assert not d_e1.is_zero
    assert all(set(key).isdisjoint({0, 1}) for key, _ in d_e1.terms())


def test_d_of_circle_direction_on_aloff_wallach():
    # V0 is index 6; d e^V0 pairs each root plane with itself
    d_v0 = d_basis_oneform(AW, 6)
    assert set(key for key, _ in d_v0.terms()) <= {(0, 1), (2, 3), (4, 5)}
    assert not d_v0.is_zero


@given(forms_of(7, 2))
@hsettings(max_examples=40, deadline=None)
def test_direct_and_leibniz_differentials_agree(w):
    assert d_form(AW, w) == d_product_rule(AW, w)


@given(forms_of(6, 1), forms_of(6, 2))
@hsettings(max_examples=40, deadline=None)
def test_leibniz_rule(a, b):
    left = d_form(W6, wedge(a, b))
    right = wedge(d_form(W6, a), b) - wedge(a, d_form(W6, b))
    assert left == right


# --- Metrics ---

def test_metric_from_weights_and_specialization():
    g = metric_from_space(W6)
    assert g.is_parametric
    g = metric_from_space(W6, {"t1": Fraction(1), "t2": Fraction(2), "t3": Fraction(4)})
    assert not g.is_parametric
    assert g.gram[2, 2] == Fraction(1, 2)
    assert g.gram[4, 4] == Fraction(1, 4)
    validate_metric(W6, g)


def test_metric_with_vanishing_weight_denominator_is_rejected():
    space = prepare_space(cp3())
    with pytest.raises(ValidationFailure) as info:
        metric_from_space(space, {"t": Fraction(0)})
    assert info.value.code == "metric_not_positive"
    assert info.value.details["sample"] == {"t": "0"}


def test_inner_product_uses_inverse_gram():
    g = metric_from_space(W6, {"t1": Fraction(3), "t2": Fraction(1), "t3": Fraction(1)})
    e = Form(6, 2, {(0, 1): 1})
    # g = 1/3 on V1, so |e^E1 ^ e^F1|^2 = 3 * 3
    assert inner_product(e, e, g) == 9
    assert inner_product(e, Form(6, 2, {(2, 3): 1}), g) == 0


def test_non_invariant_metric_rejected():
    rows = [[Fraction(int(i == j)) for j in range(6)] for i in range(6)]
    rows[0][0] = Fraction(2)
    with pytest.raises(ValidationFailure) as exc:
        validate_metric(W6, MetricOnM(ScalarMatrix.from_rows(rows)))
    assert exc.value.code == "metric_not_invariant"


def test_negative_weight_rejected():
    g = block_metric(W6, {"V1": Fraction(-1), "V2": Fraction(1), "V3": Fraction(1)})
    with pytest.raises(ValidationFailure) as exc:
        validate_metric(W6, g)
    assert exc.value.code == "metric_not_positive"


def test_random_block_metrics_are_deterministic_and_admissible():
    first = random_block_metrics(W6, 3, seed=7)
    second = random_block_metrics(W6, 3, seed=7)
    assert [m.gram.entries for m in first] == [m.gram.entries for m in second]
    for m in first:
        validate_metric(W6, m)
