import pytest
from fractions import Fraction

from algebra.expressions import parse_poly
from catalog.flag_tables import flag_table, flag_table_data
from catalog.spaces import aloff_wallach, flag_w6, sphere5
from errors import UnsupportedError, ValidationFailure
from formality.check import formality_check, obstruction_holds
from formality.dga import abstract_check, dga_to_dict, load_dga
from formality.nilpotency import nilpotency_analysis, propagate_zeros, search_witness, triviality
from formality.reports import (
    FORMAL,
    NONTRIVIAL,
    NOT_FORMAL,
    TRIVIAL,
    UNDECIDED,
    ObstructionPolynomial,
    ObstructionReport,
    PolySystem,
)
from forms.metric import metric_from_space
from lie.space import prepare_space

AB = ("a1", "a2")


def _system(*texts, names=AB):
    return PolySystem(names, tuple(parse_poly(t, names) for t in texts))


# --- Triviality tiers ---

def test_pure_powers_in_span_are_trivial():
    verdict = triviality(_system("a1^2 + a1*a2", "a1*a2", "a2^2"))
    assert verdict.status == TRIVIAL
    assert [step.kind for step in verdict.derivation] == ["span", "span"]


def test_sum_of_squares_forces_zero():
    verdict = triviality(_system("a1^2 + 3*a2^2"))
    assert verdict.status == TRIVIAL
    assert verdict.derivation[0].kind == "forced"


def test_monomial_has_rational_witness():
    verdict = triviality(_system("a1*a2"))
    assert verdict.status == NONTRIVIAL
    assert verdict.witness == (Fraction(1), Fraction(0))


def test_irrational_solutions_stay_undecided():
    verdict = triviality(_system("a1^2 - 2*a2^2"))
    assert verdict.status == UNDECIDED
    assert "a1^2" in verdict.reason


def test_degenerate_systems():
    assert triviality(PolySystem((), ())).status == TRIVIAL
    empty = triviality(PolySystem(AB, ()))
    assert empty.status == NONTRIVIAL
    assert empty.witness == (Fraction(1), Fraction(0))


def test_propagate_zeros_splits_monomials():
    names = ("a", "b")
    gens = [parse_poly("a*b", names), parse_poly("a + b", names)]
    result = propagate_zeros(gens, names, lambda zeros: zeros >= set(names))
    assert result.closed
    assert any(step.kind == "split" for step in result.steps)


def test_propagate_zeros_reports_open_branch():
    names = ("a", "b")
    result = propagate_zeros([parse_poly("a*b", names)], names, lambda zeros: zeros >= set(names))
    assert not result.closed
    assert result.witness is not None


def test_search_witness_respects_acceptance():
    gens = [parse_poly("a1*a2", AB)]
    assert search_witness(gens, 2, accept=lambda p: p[1] != 0) == (Fraction(0), Fraction(1))


# --- Nilpotency on spaces ---

def test_closed_two_forms_of_aloff_wallach_do_not_square_to_zero():
    space = prepare_space(aloff_wallach(1, 2, -3))
    system = nilpotency_analysis(space, 2, 2)
    assert system.variables == ("a1", "a2")
    assert len(system.generators) == 3
    assert all(g.total_degree() == 2 for g in system.generators)
    assert triviality(system).status == TRIVIAL


def test_flag_cube_system():
    space = prepare_space(flag_w6())
    system = nilpotency_analysis(space, 2, 3)
    assert len(system.variables) == 2
    assert len(system.generators) == 1
    # a closed form with one vanishing coefficient cubes to zero
    assert triviality(system).status == NONTRIVIAL


def test_power_beyond_top_degree_is_empty():
    space = prepare_space(flag_w6())
    system = nilpotency_analysis(space, 2, 4)
    assert system.generators == ()


# --- Formality at a metric ---

def test_sphere_is_formal_vacuously():
    space = prepare_space(sphere5())
    report = formality_check(space, metric_from_space(space))
    assert report.verdict == FORMAL
    assert report.checked_degrees == []


def test_aloff_wallach_square_is_not_harmonic():
    space = prepare_space(aloff_wallach(1, 2, -3))
    g = metric_from_space(space, {"t1": Fraction(1), "t2": Fraction(1), "t3": Fraction(1)})
    report = formality_check(space, g)
    assert report.verdict == NOT_FORMAL
    witness = report.witnesses[0]
    assert witness.degrees == (2, 2)
    assert witness.primitive is not None


def test_parametric_metric_needs_values():
    space = prepare_space(flag_w6())
    with pytest.raises(UnsupportedError) as exc:
        formality_check(space, metric_from_space(space))
    assert exc.value.code == "parametric_metric"


def test_obstruction_holds():
    t = ("t",)
    report = ObstructionReport((2, 2), [ObstructionPolynomial(parse_poly("t - 1", t), univariate=True)])
    assert obstruction_holds(report, {"t": Fraction(1)})
    assert not obstruction_holds(report, {"t": Fraction(1, 2)})


# --- Abstract tables ---

@pytest.mark.parametrize("k", [1, 2, 4])
def test_flag_tables_are_not_formal(k):
    dga = flag_table(k)
    assert dga.betti()[2 * k] == 2
    report = abstract_check(dga)
    assert report.verdict == NOT_FORMAL
    assert report.witnesses


def test_flag_table_without_second_relation_is_formal():
    data = flag_table_data(1)
    data["relations"] = ["x^3"]
    report = abstract_check(load_dga(data))
    assert report.verdict == FORMAL


def test_table_without_relations_is_formal():
    data = flag_table_data(1)
    data["relations"] = []
    assert abstract_check(load_dga(data)).verdict == FORMAL


def test_inconsistent_mirror_product_is_rejected():
    data = flag_table_data(1)
    data["products"].append({"left": "w2", "right": "w1", "result": {"w12": "2"}})
    with pytest.raises(ValidationFailure) as exc:
        load_dga(data)
    assert exc.value.code == "dga_axiom"
    assert exc.value.details["axiom"] == "graded_commutativity"


def test_wrong_degree_differential_is_rejected():
    data = flag_table_data(1)
    data["differential"]["eta"] = {"vol": "1"}
    with pytest.raises(ValidationFailure) as exc:
        load_dga(data)
    assert exc.value.details["axiom"] == "degree"


def test_table_round_trip():
    dga = flag_table(2)
    again = load_dga(dga_to_dict(dga))
    assert again.products == dga.products
    assert again.differential == dga.differential
