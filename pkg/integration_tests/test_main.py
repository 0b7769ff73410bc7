import json
import pytest
from io import StringIO

from errors import StructuralError
from main import run_command


def _run(*argv):
    out, err = StringIO(), StringIO()
    code = run_command(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def _document(*argv):
    code, out, _ = _run(*argv)
    return code, json.loads(out)


# --- Successful runs ---

def test_betti_report():
    code, doc = _document("betti", "sphere5")
    assert code == 0
    assert doc["command"] == "betti"
    assert doc["betti"]["betti"] == [1, 0, 0, 0, 0, 1]
    assert doc["betti"]["poincare_duality"] is True


def test_summary_goes_to_stderr():
    code, out, err = _run("betti", "cp3")
    assert code == 0
    assert "cp3: b = " in err
    assert "b = " not in out


def test_validate_lists_checks():
    code, doc = _document("validate", "aloff_wallach")
    assert code == 0
    assert len(doc["validation"]) == 5
    assert doc["parameters"] == ["t1", "t2", "t3"]


def test_invariant_degree_reports_closed_and_exact():
    code, doc = _document("invariant", "aloff_wallach", "--degree", "2")
    assert code == 0
    assert [(s["role"], s["dim"]) for s in doc["form_spaces"]] == [("invariant", 7), ("closed", 4), ("exact", 3)]
    assert len(doc["differential"][0]) == 7


def test_reports_are_deterministic():
    first = _run("invariant", "flag_w6", "--degree", "2")[1]
    second = _run("invariant", "flag_w6", "--degree", "2")[1]
    assert first == second


def test_harmonic_with_sample_check():
    code, doc = _document(
        "harmonic", "flag_w6", "--set", "t1=1", "--set", "t2=2", "--set", "t3=3",
        "--degree", "2", "--check-samples", "2", "--strict",
    )
    assert code == 0
    assert doc["specialized"] == {"t1": "1", "t2": "2", "t3": "3"}
    assert doc["form_spaces"][0]["dim"] == 2
    assert len(doc["samples"]) == 2
    assert all(s["agrees"] for s in doc["samples"])


def test_formality_verdicts_and_strict_exit():
    args = ["formality", "aloff_wallach_1_2_m3", "--set", "t1=1", "--set", "t2=1", "--set", "t3=1"]
    code, doc = _document(*args)
    assert code == 0
    assert doc["formality"]["verdict"] == "NotFormal"
    assert _run(*args, "--strict")[0] == 1
    assert _document("formality", "sphere5", "--strict") == (0, _document("formality", "sphere5")[1])


def test_parametric_obstruction_report():
    code, doc = _document("formality", "cp3", "--parametric", "--degree", "2", "--strict")
    assert code == 0
    roots = [r["lower"] for o in doc["obstructions"][0]["obstructions"] for r in o["positive_roots"]]
    assert set(roots) == {"1"}


def test_nilpotency_strict():
    code, doc = _document("nilpotency", "flag_w6", "--degree", "2", "--power", "3")
    assert code == 0
    assert doc["triviality"]["status"] == "Nontrivial"
    assert doc["system"]["variables"] == ["a1", "a2"]
    assert _run("nilpotency", "flag_w6", "--degree", "2", "--power", "3", "--strict")[0] == 1


def test_abstract_table():
    code, doc = _document("abstract", "flag_w12_table", "--strict")
    assert code == 1
    assert doc["formality"]["verdict"] == "NotFormal"
    assert "b_4 = 2" in doc["notes"]


def test_output_file(tmp_path):
    target = tmp_path / "report.json"
    code, out, _ = _run("betti", "flag_w6", "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["betti"]["betti"] == [1, 0, 2, 0, 2, 0, 1]


def test_catalog_written_and_loadable(tmp_path):
    directory = tmp_path / "specs"
    code, doc = _document("catalog", str(directory))
    assert code == 0
    assert (directory / "cp3.json").exists()
    assert _document("betti", str(directory / "flag_w6.json"))[1]["betti"]["betti"] == [1, 0, 2, 0, 2, 0, 1]


# --- Failures ---

@pytest.mark.parametrize(
    "argv, code_name",
    [
        (["formality", "flag_w6"], "parametric_metric"),
        (["nilpotency", "flag_w6"], "structural"),
        (["betti", "no_such_space"], "missing_file"),
        (["harmonic", "flag_w6", "--set", "t1=0.5"], "float_rejected"),
        (["harmonic", "flag_w6", "--set", "s=1"], "undeclared_parameter"),
        (["invariant", "flag_w6", "--degree", "9"], "structural"),
        (["formality", "cp3", "--set", "t=0"], "metric_not_positive"),
        (["harmonic", "cp3", "--set", "t=0", "--degree", "2"], "metric_not_positive"),
    ],
)
def test_errors_exit_two_with_json(argv, code_name):
    code, doc = _document(*argv)
    assert code == 2
    assert doc["code"] == code_name
    assert doc["error"]


def test_bad_invocation_exits_two():
    assert _run("nosuch")[0] == 2
    assert _run()[0] == 2


def test_engine_errors_are_reported(mocker):
    mocked = mocker.patch("commands.betti", side_effect=StructuralError("boom"))
    code, doc = _document("betti", "sphere5")
    assert code == 2
    assert doc == {"error": "boom", "code": "structural"}
    mocked.assert_called_once()


def test_unexpected_errors_exit_two_with_json(mocker):
    mocker.patch("commands.betti", side_effect=RuntimeError("kaput"))
    code, doc = _document("betti", "sphere5")
    assert code == 2
    assert doc["code"] == "internal"
    assert "kaput" in doc["error"]
