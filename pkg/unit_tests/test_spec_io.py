import json
import os
import pytest
from fractions import Fraction
from pydantic import ValidationError

from catalog.spaces import CATALOG, aloff_wallach
from errors import SpecParseError, ValidationFailure
from invariants.complex import betti
from lie.space import prepare_space
from schemas.report import BettiModel, Report
from schemas.spec_file import SpecFile
from spec_io import (
    emit_report,
    load_json,
    load_space,
    parse_dga,
    parse_spec,
    read_report,
    spec_from_model,
    spec_to_dict,
    write_catalog,
)
from utils import create_error_json, parse_assignments

# so(3) with [e0, e1] = e2 and cyclic; Q = identity is ad-invariant
SO3_BRACKETS = [[0, 1, [[2, "1"]]], [1, 2, [[0, 1]]], [0, 2, [[1, "-1"]]]]
IDENTITY_3 = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]


def _sphere2(**overrides):
    data = {
        "name": "sphere2",
        "algebra": {"dim": 3, "labels": ["e0", "e1", "e2"], "brackets": SO3_BRACKETS},
        "q_form": IDENTITY_3,
        "h_basis": [["0", "0", "1"]],
    }
    data.update(overrides)
    return data


def _write(tmp_path, data, name="spec.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data), encoding="utf-8")
    return str(path)


# --- JSON layer ---

def test_float_literals_rejected():
    with pytest.raises(SpecParseError) as exc:
        load_json('{"weights": {"m": 0.5}}')
    assert exc.value.code == "float_rejected"


def test_malformed_json_reports_position():
    with pytest.raises(SpecParseError) as exc:
        load_json('{"name": "x",\n "dim": }')
    assert exc.value.code == "malformed_json"
    assert exc.value.details["line"] == 2


# --- Spec files ---

def test_sphere_spec_loads(tmp_path):
    space = load_space(_write(tmp_path, _sphere2()))
    assert (space.dim_h, space.dim_m) == (1, 2)
    assert betti(space).numbers == (1, 0, 1)


def test_missing_field(tmp_path):
    data = _sphere2()
    del data["h_basis"]
    with pytest.raises(SpecParseError) as exc:
        load_space(_write(tmp_path, data))
    assert exc.value.code == "missing_field"
    assert exc.value.details[0]["loc"] == "h_basis"


def test_unknown_field_is_malformed(tmp_path):
    with pytest.raises(SpecParseError) as exc:
        load_space(_write(tmp_path, _sphere2(colour="blue")))
    assert exc.value.code == "malformed_spec"


def test_bracket_index_out_of_range(tmp_path):
    data = _sphere2()
    data["algebra"]["brackets"] = [[0, 1, [[5, "1"]]]]
    with pytest.raises(SpecParseError) as exc:
        load_space(_write(tmp_path, data))
    assert exc.value.code == "index_out_of_range"


def test_omitted_brackets_give_abelian_algebra(tmp_path):
    data = {"name": "torus2", "algebra": {"dim": 2}, "q_form": [["1", "0"], ["0", "1"]], "h_basis": []}
    space = load_space(_write(tmp_path, data))
    assert space.spec.algebra.labels == ("g0", "g1")
    assert betti(space).numbers == (1, 2, 1)


def test_non_invariant_q_is_reported(tmp_path):
    data = _sphere2()
    data["algebra"]["brackets"] = [[0, 1, [[2, "1"]]], [1, 2, [[0, "2"]]], [0, 2, [[1, "-1"]]]]
    with pytest.raises(ValidationFailure) as exc:
        load_space(_write(tmp_path, data))
    assert exc.value.code == "q_invalid"


def test_parametric_weights_and_samples(tmp_path):
    data = _sphere2(metric={"weights": {"m": "$t"}}, parameters=["t"], samples=[{"t": "2"}, {"t": "1/3"}])
    space = load_space(_write(tmp_path, data))
    assert space.parameters == ("t",)
    assert len(space.spec.samples) == 2


def test_unknown_block_in_weights(tmp_path):
    data = _sphere2(metric={"weights": {"V": "1"}})
    with pytest.raises(SpecParseError) as exc:
        load_space(_write(tmp_path, data))
    assert exc.value.code == "unknown_block"


def test_sample_with_undeclared_parameter(tmp_path):
    data = _sphere2(metric={"weights": {"m": "$t"}}, parameters=["t"], samples=[{"s": "1"}])
    with pytest.raises(SpecParseError) as exc:
        load_space(_write(tmp_path, data))
    assert exc.value.code == "undeclared_parameter"


def test_metric_needs_exactly_one_kind(tmp_path):
    data = _sphere2(metric={})
    with pytest.raises(SpecParseError):
        load_space(_write(tmp_path, data))


# --- Representations ---

SU2_MATRICES = [
    [{"row": 0, "col": 0, "value": [0, 1]}, {"row": 1, "col": 1, "value": [0, -1]}],
    [{"row": 0, "col": 1, "value": [1, 0]}, {"row": 1, "col": 0, "value": [-1, 0]}],
    [{"row": 0, "col": 1, "value": [0, 1]}, {"row": 1, "col": 0, "value": [0, 1]}],
]


def test_structure_constants_from_representation(tmp_path):
    data = _sphere2(q_form="negative_half_trace", representation={"field": "complex", "matrices": SU2_MATRICES})
    data["algebra"]["brackets"] = []
    space = load_space(_write(tmp_path, data))
    a = space.spec.algebra
    assert a.bracket_basis(0, 1) == {2: Fraction(2)}
    assert space.spec.q.gram == tuple(tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3))


def test_representation_mismatch(tmp_path):
    data = _sphere2(q_form="negative_half_trace", representation={"field": "complex", "matrices": SU2_MATRICES})
    with pytest.raises(ValidationFailure) as exc:
        load_space(_write(tmp_path, data))
    assert exc.value.code == "representation_mismatch"


def test_negative_half_trace_needs_representation():
    with pytest.raises(ValidationError):
        SpecFile.model_validate(_sphere2(q_form="negative_half_trace"))


# --- Catalog ---

def test_bundled_names_resolve_without_files():
    space = load_space("aloff_wallach.json")
    assert (space.spec.algebra.dim, space.dim_m, len(space.blocks)) == (8, 7, 4)


def test_unknown_name():
    with pytest.raises(SpecParseError) as exc:
        load_space("no_such_space.json")
    assert exc.value.code == "missing_file"
    assert "berger13" in exc.value.details["bundled"]


def test_spec_round_trip_through_json():
    spec = aloff_wallach(1, 2, -3)
    model = SpecFile.model_validate(json.loads(json.dumps(spec_to_dict(spec))))
    again = spec_from_model(model)
    assert dict(again.algebra.brackets) == dict(spec.algebra.brackets)
    assert again.h_basis == spec.h_basis
    assert prepare_space(again).dim_m == 7


def test_write_catalog(tmp_path):
    paths = write_catalog(str(tmp_path / "catalog"))
    assert len(paths) == len(CATALOG) + 3
    table = next(p for p in paths if p.endswith("flag_w6_table.json"))
    assert parse_dga(table).name == "flag_w6_table"
    sphere = next(p for p in paths if p.endswith("sphere5.json"))
    assert load_space(sphere).dim_m == 5


def test_write_catalog_is_byte_identical_across_runs(tmp_path):
    first = write_catalog(str(tmp_path / "first"))
    second = write_catalog(str(tmp_path / "second"))
    assert [os.path.basename(p) for p in first] == [os.path.basename(p) for p in second]
    for a, b in zip(first, second):
        with open(a, "rb") as fa, open(b, "rb") as fb:
            assert fa.read() == fb.read(), a


def test_bundled_tables_resolve():
    assert parse_dga("flag_w24_table").degrees[1] == 8


# --- Reports and helpers ---

def test_report_round_trip(tmp_path):
    report = Report(
        command="betti",
        space="sphere2",
        betti=BettiModel(betti=[1, 0, 1], invariant_dims=[1, 0, 1], euler_characteristic=2, poincare_duality=True),
    )
    out = tmp_path / "report.json"
    text = emit_report(report, str(out))
    assert out.read_text(encoding="utf-8") == text
    assert "formality" not in json.loads(text)
    assert read_report(text) == report


def test_create_error_json():
    document = json.loads(create_error_json("bad", {"loc": "x"}, code="malformed_spec"))
    assert document == {"error": "bad", "code": "malformed_spec", "details": {"loc": "x"}}


def test_parse_assignments():
    assert parse_assignments(["t=1/2", "s = 3"], ("s", "t")) == {"t": Fraction(1, 2), "s": Fraction(3)}
    with pytest.raises(SpecParseError) as exc:
        parse_assignments(["u=1"], ("t",))
    assert exc.value.code == "undeclared_parameter"
    with pytest.raises(SpecParseError) as exc:
        parse_assignments(["t"], ("t",))
    assert exc.value.code == "malformed_assignment"


def test_parse_spec_returns_the_validated_spec(tmp_path):
    spec = parse_spec(_write(tmp_path, _sphere2()))
    assert spec.name == "sphere2"
    assert spec.h_basis == ((Fraction(0), Fraction(0), Fraction(1)),)
