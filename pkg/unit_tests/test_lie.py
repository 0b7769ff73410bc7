import pytest
from dataclasses import replace
from fractions import Fraction

from catalog.spaces import aloff_wallach, berger13, cp3, flag_w6, sphere5
from errors import StructuralError, ValidationFailure
from lie.algebra import BiInvariantForm, LieAlgebra, validate_algebra, validate_q
from lie.matrices import MatrixCoordinates, mat_mul, realify_complex, realify_quaternion
from lie.space import Block, HomogeneousSpaceSpec, isotropy_operator, prepare_space

# su(3) basis order of the catalog: E1 E2 E3 F1 F2 F3 H1 H2
E1, E2, E3, F1, F2, F3, H1, H2 = range(8)


@pytest.fixture(scope="module")
def su3():
    spec = aloff_wallach(-2, 1, 1)
    return spec.algebra, spec.q


def _unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


# --- Structure constants from matrices ---

def test_su3_bracket_table(su3):
    a, _ = su3
    assert a.bracket_basis(H1, E1) == {F1: Fraction(2)}
    assert a.bracket_basis(H1, F1) == {E1: Fraction(-2)}
    assert a.bracket_basis(E1, E2) == {E3: Fraction(1)}


def test_su3_validates(su3):
    a, q = su3
    assert validate_algebra(a).ok
    assert validate_q(a, q).ok


def test_q_is_minus_half_trace(su3):
    _, q = su3
    assert q.gram[E1][E1] == 1
    assert q.gram[H1][H1] == 1
    assert q.gram[H1][H2] == Fraction(-1, 2)
    assert q.gram[E1][F1] == 0


def test_perturbed_bracket_breaks_jacobi(su3):
    a, _ = su3
    triples = [(i, j, dict(v)) for i, j, v in a.triples()]
    triples = [(i, j, {k: 2 * c for k, c in v.items()} if (i, j) == (E1, E2) else v) for i, j, v in triples]
    broken = LieAlgebra.from_triples(a.labels, triples)
    report = validate_algebra(broken)
    assert not report.ok
    failure = report.failures[0]
    assert failure.name == "jacobi"
    assert failure.witness["cyclic_sum"]


def test_abelian_algebra_is_valid():
    a = LieAlgebra.from_triples(("x", "y", "z"), [])
    assert validate_algebra(a).ok


def test_conflicting_antisymmetry_is_reported():
    a = LieAlgebra.from_triples(("x", "y", "z"), [(0, 1, {2: Fraction(1)}), (1, 0, {2: Fraction(1)})])
    report = validate_algebra(a)
    assert [c.name for c in report.failures] == ["antisymmetry"]


def test_non_invariant_q_is_rejected(su3):
    a, q = su3
    gram = [list(r) for r in q.gram]
    gram[E1][E1] = Fraction(2)
    report = validate_q(a, BiInvariantForm(tuple(tuple(r) for r in gram)))
    assert not report.ok


def test_bracket_index_out_of_range():
    with pytest.raises(StructuralError):
        LieAlgebra.from_triples(("x", "y"), [(0, 1, {5: Fraction(1)})])


def test_quaternion_realification_is_multiplicative():
    i = realify_quaternion({(0, 0): (0, 1, 0, 0)})
    j = realify_quaternion({(0, 0): (0, 0, 1, 0)})
    k = realify_quaternion({(0, 0): (0, 0, 0, 1)})
    assert mat_mul(i, j) == k


def test_complex_realification_squares_i_to_minus_one():
    i = realify_complex({(0, 0): (0, 1)})
    assert mat_mul(i, i) == {(0, 0): Fraction(-1), (1, 1): Fraction(-1)}


def test_matrix_coordinates_outside_span():
    coords = MatrixCoordinates([realify_complex({(0, 1): (1, 0)})])
    with pytest.raises(StructuralError):
        coords.coordinates(realify_complex({(1, 0): (1, 0)}))


# --- Reductive split and blocks ---

@pytest.mark.parametrize(
    "build, dim_g, dim_m, block_dims",
    [
        (lambda: aloff_wallach(-2, 1, 1), 8, 7, [1, 2, 2, 2]),
        (lambda: aloff_wallach(1, 2, -3), 8, 7, [1, 2, 2, 2]),
        (flag_w6, 8, 6, [2, 2, 2]),
        (sphere5, 8, 5, [4, 1]),
        (cp3, 10, 6, [2, 4]),
        (berger13, 24, 13, [5, 8]),
    ],
)
def test_catalog_spaces_split(build, dim_g, dim_m, block_dims):
    space = prepare_space(build())
    assert space.spec.algebra.dim == dim_g
    assert space.dim_m == dim_m
    assert space.dim_h == dim_g - dim_m
    assert [len(b.indices) for b in space.blocks] == block_dims


def test_default_circle_complement_for_equal_weights():
    spec = aloff_wallach(-2, 1, 1)
    # eps = H3 = -H1 - H2
    assert spec.m_basis[6][H1] == -1 and spec.m_basis[6][H2] == -1


def test_circle_weights_must_sum_to_zero():
    with pytest.raises(StructuralError):
        aloff_wallach(1, 1, 1)


def test_non_invariant_block_rejected():
    spec = replace(flag_w6(), blocks=(Block("V1", (0, 2)), Block("V2", (1, 3)), Block("V3", (4, 5))))
    with pytest.raises(ValidationFailure) as exc:
        prepare_space(spec)
    assert exc.value.code == "block_not_invariant"


def test_blocks_must_partition_m():
    spec = replace(flag_w6(), blocks=(Block("V1", (0, 1)), Block("V2", (2, 3))))
    with pytest.raises(ValidationFailure) as exc:
        prepare_space(spec)
    assert exc.value.code == "blocks_not_partition"


def test_non_subalgebra_rejected(su3):
    a, q = su3
    spec = HomogeneousSpaceSpec("bad", a, q, h_basis=(_unit(8, E1), _unit(8, E2)))
    with pytest.raises(ValidationFailure) as exc:
        prepare_space(spec)
    assert exc.value.code == "not_subalgebra"


def test_complement_computed_when_omitted(su3):
    a, q = su3
    space = prepare_space(HomogeneousSpaceSpec("w6", a, q, h_basis=(_unit(8, H1), _unit(8, H2))))
    assert space.dim_m == 6
    assert space.m_labels == tuple(f"m{i}" for i in range(6))


def test_isotropy_operator_is_skew_for_q():
    space = prepare_space(flag_w6())
    op = isotropy_operator(space, _unit(8, H1))
    for i in range(6):
        for j in range(6):
            assert op[i, j] == -op[j, i]


def test_isotropy_operator_rejects_m_vectors():
    space = prepare_space(flag_w6())
    with pytest.raises(ValidationFailure) as exc:
        isotropy_operator(space, _unit(8, E1))
    assert exc.value.code == "outside_subalgebra"
