import pytest
import sympy
from fractions import Fraction
from hypothesis import assume, given, settings as hsettings, strategies as st

from algebra.expressions import parse_poly, parse_rational, parse_scalar
from algebra.linalg import ScalarMatrix, SparseEchelon, determinant, inverse, nullspace, positive_definite_witness
from algebra.polynomial import Poly, univariate_gcd
from algebra.roots import positive_roots, real_roots
from algebra.scalars import RatFunc, evaluate, is_zero, simplify
from errors import SpecParseError, StructuralError, UnsupportedError

T = ("t",)
coefficients = st.lists(st.integers(min_value=-9, max_value=9), min_size=1, max_size=5)


def _poly(coeffs):
    return Poly.from_univariate(T, "t", coeffs)


# --- Polynomials ---

@given(coefficients, coefficients)
@hsettings(max_examples=60, deadline=None)
def test_product_matches_sympy(a, b):
    t = sympy.Symbol("t")
    expected = sympy.Poly(sympy.expand(sum(c * t**i for i, c in enumerate(a)) * sum(c * t**i for i, c in enumerate(b))), t)
    product = _poly(a) * _poly(b)
    if expected.is_zero:
        assert product.is_zero
        return
    got = product.univariate_coefficients("t")
    want = [Fraction(int(c)) for c in reversed(expected.all_coeffs())]
    assert got == want


def test_poly_normal_form_drops_zero_terms():
    p = Poly(("a", "b"), {(1, 0): 2, (0, 1): 0})
    q = Poly(("a", "b"), {(1, 0): 1}) + Poly(("a", "b"), {(1, 0): 1})
    assert p == q
    assert (p - q).is_zero


def test_exponent_width_is_checked():
    with pytest.raises(StructuralError):
        Poly(("a", "b"), {(1,): 1})


def test_normalized_factor_strips_units():
    p = parse_poly("6*t^3 - 6*t", T)
    assert p.normalized_factor() == parse_poly("t^2 - 1", T)


def test_univariate_gcd_is_monic():
    a = parse_poly("2*t^2 - 2", T)
    b = parse_poly("3*t - 3", T)
    assert univariate_gcd(a, b, "t") == parse_poly("t - 1", T)


# --- Rational functions ---

def test_ratfunc_arithmetic_and_evaluation():
    x = parse_scalar("1/t", T)
    assert isinstance(x, RatFunc)
    y = x * RatFunc.variable(T, "t")
    assert simplify(y) == Fraction(1)
    assert evaluate(x + x, {"t": 4}) == Fraction(1, 2)
    assert is_zero(x - x)


# --- Expressions ---

def test_parse_rational_exact():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(7) == Fraction(7)


@pytest.mark.parametrize("text", ["0.5", "1e3"])
def test_floats_rejected(text):
    with pytest.raises(SpecParseError) as exc:
        parse_scalar(text)
    assert exc.value.code == "float_rejected"


def test_undeclared_parameter():
    with pytest.raises(SpecParseError) as exc:
        parse_scalar("2*s", T)
    assert exc.value.code == "undeclared_parameter"


def test_division_by_zero_is_malformed():
    with pytest.raises(SpecParseError) as exc:
        parse_scalar("1/0")
    assert exc.value.code == "malformed_rational"


# --- Nullspaces ---

def test_nullspace_identity_is_empty():
    result = nullspace(ScalarMatrix.identity(3))
    assert result.basis == ()
    assert result.pivots == ()


def test_nullspace_zero_matrix():
    result = nullspace(ScalarMatrix.zeros(2, 2))
    assert sorted(result.basis) == sorted([(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))])


def test_nullspace_sum_constraint():
    result = nullspace(ScalarMatrix.from_rows([[1, 1, 1]]))
    assert len(result.basis) == 2
    for vec in result.basis:
        assert sum(vec) == 0


def test_parametric_nullspace_specializes():
    t = RatFunc.variable(T, "t")
    m = ScalarMatrix.from_rows([[t, Fraction(1)]])
    result = nullspace(m)
    assert len(result.basis) == 1
    v = result.basis[0]
    assert is_zero(t * v[0] + v[1])


def test_cleared_denominators_are_reported_as_pivots():
    t = RatFunc.variable(T, "t")
    result = nullspace(ScalarMatrix.from_rows([[1 / (t - 1), t]]))
    assert len(result.basis) == 1
    assert parse_poly("t - 1", T) in result.pivots


@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=3))
@hsettings(max_examples=50, deadline=None)
def test_nullspace_vectors_are_annihilated(rows):
    m = ScalarMatrix.from_rows(rows, cols=3)
    result = nullspace(m)
    assert result.rank + len(result.basis) == 3
    assert sympy.Matrix(rows).rank() == result.rank
    for vec in result.basis:
        for row in rows:
            assert sum(Fraction(a) * b for a, b in zip(row, vec)) == 0


linear_entries = st.tuples(st.integers(-3, 3), st.integers(-2, 2))


@given(
    st.lists(st.lists(linear_entries, min_size=4, max_size=4), min_size=4, max_size=4),
    st.integers(-6, 6).filter(bool),
    st.integers(1, 4),
)
@hsettings(max_examples=60, deadline=None)
def test_parametric_nullspace_specializes_off_the_pivots(entries, num, den):
    t = RatFunc.variable(T, "t")
    m = ScalarMatrix.from_rows([[a + b * t for a, b in row] for row in entries])
    result = nullspace(m)
    value = {"t": Fraction(num, den)}
    assume(all(p.evaluate(value) != 0 for p in result.pivots))

    numeric = [[Fraction(a) + b * value["t"] for a, b in row] for row in entries]
    reference = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in numeric])
    assert len(result.basis) == 4 - reference.rank()
    for vec in result.basis:
        point = [evaluate(x, value) for x in vec]
        assert any(point)
        for row in numeric:
            assert sum(a * b for a, b in zip(row, point)) == 0


def test_determinant_and_inverse_match_sympy():
    rows = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    m = ScalarMatrix.from_rows(rows)
    assert determinant(m) == Fraction(int(sympy.Matrix(rows).det()))
    inv = inverse(m)
    expected = sympy.Matrix(rows).inv()
    for i in range(3):
        for j in range(3):
            assert inv[i, j] == Fraction(int(expected[i, j].p), int(expected[i, j].q))


def test_positive_definite_witness():
    assert positive_definite_witness(ScalarMatrix.from_rows([[2, 1], [1, 2]])) is None
    assert positive_definite_witness(ScalarMatrix.from_rows([[1, 2], [2, 1]])) is not None


def test_sparse_echelon_detects_dependence():
    echelon = SparseEchelon()
    assert echelon.insert({"a": Fraction(1), "b": Fraction(1)}, label=0) is None
    assert echelon.insert({"b": Fraction(1)}, label=1) is None
    assert echelon.insert({"a": Fraction(2)}, label=2) is not None


# --- Real roots ---

def test_roots_of_t_squared_minus_one():
    roots = real_roots(parse_poly("t^2 - 1", T))
    assert [(r.lower, r.exact) for r in roots] == [(Fraction(-1), True), (Fraction(1), True)]
    assert [r.lower for r in positive_roots(roots)] == [Fraction(1)]


def test_root_at_zero_is_not_positive():
    roots = real_roots(parse_poly("t", T))
    assert [r.lower for r in roots] == [Fraction(0)]
    assert positive_roots(roots) == []


def test_no_real_roots():
    assert real_roots(parse_poly("t^2 + 1", T)) == []


def test_irrational_roots_are_isolated():
    roots = real_roots(parse_poly("t^2 - 2", T), Fraction(1, 100))
    assert len(roots) == 2
    positive = positive_roots(roots)
    assert len(positive) == 1
    r = positive[0]
    assert not r.exact
    assert r.lower**2 < 2 < r.upper**2
    assert r.upper - r.lower <= Fraction(1, 100)


@given(st.sets(st.integers(-6, 6), min_size=1, max_size=4))
@hsettings(max_examples=40, deadline=None)
def test_integer_roots_reported_exactly(roots):
    p = Poly.one(T)
    for r in roots:
        p = p * parse_poly(f"t - ({r})", T)
    found = real_roots(p)
    assert all(x.exact for x in found)
    assert [x.lower for x in found] == sorted(Fraction(r) for r in roots)


def test_non_dyadic_rational_roots_are_exact_beside_irrational_ones():
    roots = real_roots(parse_poly("(t^2 - 2)*(3*t - 1)^2", T), Fraction(1, 1000))
    assert len(roots) == 3
    exact = [r for r in roots if r.exact]
    assert [r.lower for r in exact] == [Fraction(1, 3)]
    assert [r.exact for r in positive_roots(roots)] == [True, False]


@given(st.lists(st.integers(-5, 5), min_size=2, max_size=6).filter(lambda c: any(c[1:])))
@hsettings(max_examples=60, deadline=None)
def test_root_count_matches_sturm_sequence(coeffs):
    t = sympy.Symbol("t")
    p = Poly.zero(T)
    for i, c in enumerate(coeffs):
        p = p + parse_poly(f"({c})*t^{i}", T)
    found = real_roots(p)
    reference = sympy.Poly(list(reversed(coeffs)), t).sqf_part()
    assert len(found) == len(sympy.real_roots(reference))
    assert len(found) == reference.count_roots()
    for root in found:
        if root.exact:
            assert p.evaluate({"t": root.lower}) == 0
        else:
            assert root.upper - root.lower <= Fraction(1, 1000)
            lo, hi = (reference.eval(sympy.Rational(x.numerator, x.denominator)) for x in (root.lower, root.upper))
            assert lo * hi < 0


def test_multivariate_roots_unsupported():
    with pytest.raises(UnsupportedError):
        real_roots(parse_poly("s*t - 1", ("s", "t")))
