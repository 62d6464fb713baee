import io
import json
import subprocess
import sys

import pytest

from khoval.cli import run
from khoval.document import ReportDocument


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def doc(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_classify_positive_trefoil():
    d = doc("classify", "--braid", "1 1 1", "--strands", "2")
    assert d["diagram"]["class"] == "Positive"
    assert d["diagram"]["g3_D"] == "1"
    assert d["diagram"]["seifert_circles"] == 2
    assert (d["diagram"]["n_plus"], d["diagram"]["n_minus"]) == (3, 0)


def test_classify_case2():
    d = doc("classify", "--braid", "1 1 -1", "--strands", "2")
    assert d["diagram"]["class"] == "AlmostPositive"
    assert d["diagram"]["case"] == 2


def test_classify_parse_error_names_token():
    code, out, err = call("classify", "--pd", "X(1,2,3)")
    assert code == 2 and out == ""
    assert "X(1,2,3)" in err


@pytest.mark.parametrize("argv", [
    ("classify", "--braid", "1 x", "--strands", "2"),
    ("classify", "--braid", "3", "--strands", "2"),
    ("classify", "--braid", "1 1"),
    ("classify",),
    ("classify", "--pd", "O", "--braid", "1", "--strands", "2"),
    ("classify", "/no/such/file"),
])
def test_bad_input_exit_2(argv):
    assert call(*argv)[0] == 2


def test_file_input(tmp_path):
    f = tmp_path / "trefoil.pd"
    f.write_text("# positive trefoil\nX(4,2,5,1) X(2,6,3,5)\nX(6,4,1,3)  # closing crossing\n")
    d = doc("classify", str(f))
    assert d["diagram"]["class"] == "Positive"
    assert d["input"]["file"] == str(f)


def test_homology_unknot():
    d = doc("homology", "--pd", "O")
    assert d["homology"] == [{"i": 0, "j": -1, "dim": 1}, {"i": 0, "j": 1, "dim": 1}]


def test_homology_trefoil_raw():
    d = doc("homology", "--braid", "1 1 1", "--strands", "2", "--raw")
    assert len(d["homology"]) == 4
    assert {r["i"] for r in d["homology"]} == {0, 2, 3}
    assert [(r["i"], r["j"]) for r in d["homology"]] == sorted((r["i"], r["j"]) for r in d["homology"])
    # three positive crossings: KH^{i,j} = H^{i,j-3}
    assert d["homology_raw"] == [{**r, "j": r["j"] - 3} for r in d["homology"]]


def test_homology_budget_exit_4():
    word = " ".join(["1", "2"] * 10)
    assert call("homology", "--braid", word, "--strands", "3")[0] == 4
    assert call("homology", "--braid", "1 1 1 1 1", "--strands", "2", "--max-crossings", "4")[0] == 4


def test_jones():
    d = doc("jones", "--braid", "1 1 1", "--strands", "2")
    assert d["jones_kh"]["terms"] == {"2": "1", "6": "1", "8": "-1"}
    assert d["jones_kh"] == d["jones_oracle"]
    assert d["jones_kh"]["text"] == "-t^4 + t^3 + t"


def test_rasmussen():
    d = doc("rasmussen", "--braid", "1 1 1", "--strands", "2")
    assert (d["s"], d["g3_L"], d["g4"]) == (2, "1", "1")
    d = doc("rasmussen", "--braid", "1 1 -1", "--strands", "2")
    assert d["s"] == 0 and d["theorem31_case"] == "Case2"
    assert d["s_formula"] == "s = 2 g3(D) - 2"


@pytest.mark.parametrize("argv", [
    ("rasmussen", "--braid", "1 -1 1 -1", "--strands", "2"),
    ("rasmussen", "--braid", "1 1", "--strands", "2"),
])
def test_rasmussen_not_applicable(argv):
    assert call(*argv)[0] == 3


def test_verify_single():
    d = doc("verify", "--braid", "1 1 -1", "--strands", "2")
    support = next(c for c in d["checks"] if c["name"] == "support")
    assert support["passed"] and "s=0" in support["detail"]
    assert d["passed"]
    assert doc("verify", "--pd", "O")["passed"]


def test_verify_reports_d_squared():
    d = doc("verify", "--braid", "1 2 1 2", "--strands", "3")
    names = [c["name"] for c in d["checks"]]
    assert "d_squared_zero" in names and "grading_preserved" in names


def test_fixtures_listing():
    d = doc("fixtures")
    assert len(d["fixtures"]) == 21 + 266
    assert d["fixtures"][0]["id"] == "unknot"


def test_round_trip_is_byte_identical():
    code, out, _ = call("verify", "--braid", "1 2 1 -2 1", "--strands", "3")
    assert code == 0
    assert ReportDocument.from_json(out).to_json() == out
    code, out, _ = call("homology", "--pd", "X(1,1,2,2) O", "--raw")
    assert ReportDocument.from_json(out).to_json() == out


def test_schema_version_checked():
    with pytest.raises(ValueError):
        ReportDocument.from_json('{"schema_version": 99}')


def test_pretty_output():
    code, out, _ = call("homology", "--braid", "1 1 1", "--strands", "2", "--pretty")
    assert code == 0
    assert "Kh^{i,j}" in out and "AlmostPositive" not in out
    with pytest.raises(json.JSONDecodeError):
        json.loads(out)


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "khoval.cli", "classify", "--pd", "O"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["diagram"]["class"] == "Positive"
