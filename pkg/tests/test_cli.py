import json

import pytest

from gmlab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_then_fusion_passes(tmp_path, capsys):
    a = tmp_path / "a.json"
    code, out, _ = run(capsys, "build", "--model", "dihedral:5", "--eta", "-1/3", "--field", "Q", "--out", str(a))
    assert code == 0 and json.loads(a.read_text())["eta"] == "-1/3"
    code, out, _ = run(capsys, "fusion", str(a), "--axis", "0", "--law", "M:4/3,-4/3", "--side", "left")
    rep = json.loads(out)
    assert code == 0 and rep["pass"] and rep["results"]["axes"][0]["pass"]


def test_fusion_failure_has_witness(tmp_path, capsys):
    b7 = tmp_path / "b7.json"
    run(capsys, "build", "--model", "dihedral:7", "--eta", "-1/5", "--out", str(b7))
    code, out, _ = run(capsys, "fusion", str(b7), "--axis", "0", "--law", "M:6/5,-6/5", "--side", "left")
    rep = json.loads(out)
    assert code == 1 and not rep["pass"]
    v = rep["results"]["axes"][0]["violations"][0]
    assert (v["mu"], v["nu"]) == ("6/5", "6/5") and v["witness"] is not None


def test_reports_are_byte_identical(capsys):
    outs = [run(capsys, "spectrum", "--model", "frobenius:3,2")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    assert "elapsed" not in outs[0]


def test_parallel_matches_serial(capsys):
    serial = json.loads(run(capsys, "fusion", "--model", "dihedral:7")[1])
    par = json.loads(run(capsys, "fusion", "--model", "dihedral:7", "--parallel")[1])
    assert serial["results"] == par["results"]


def test_scalars_are_strings(capsys):
    rep = json.loads(run(capsys, "form", "--model", "dihedral:5")[1])
    assert rep["results"]["determinant"] == "-256/243"


def test_text_format(capsys):
    code, out, _ = run(capsys, "miyamoto", "--model", "dihedral:5", "--format", "text")
    assert code == 0 and "results.order: 10" in out


@pytest.mark.parametrize("argv,code", [
    (["validate", "--model", "burnside23"], 0),
    (["ideal", "--model", "dihedral:5", "--eta", "1/2"], 0),
    (["closure", "--model", "frobenius:5,2", "--axis", "0,1"], 0),
    (["closure", "--model", "frobenius:5,2", "--axis", "0,1,5", "--max-dim", "10"], 1),
    (["verify-gm", "--model", "dihedral:5"], 0),
    (["audit", "--model", "dihedral:5", "--axis", "0,1"], 1),
    (["spectrum", "--model", "dihedral:5", "--side", "right"], 1),
    (["spectrum", "--model", "dihedral:5", "--side", "right", "--field", "F:13", "--eta", "-1/3"], 0),
    (["miyamoto", "--model", "frobenius:5,2", "--cap", "20"], 1),
    (["build", "--model", "dihedral:5", "--eta", "-1"], 2),
    (["build", "--model", "dihedral:5", "--eta", "-1", "--force"], 0),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


@pytest.mark.parametrize("argv", [
    ["build", "--model", "dihedral:4"],
    ["build", "--model", "dihedral:5", "--eta", "1/0"],
    ["build", "--model", "dihedral:5", "--field", "F:9"],
    ["build", "--model", "dihedral:5", "--eta", "abc"],
    ["fusion", "--model", "dihedral:5", "--law", "M:1"],
    ["fusion", "--model", "dihedral:5", "--axis", "9"],
    ["spectrum"],
    ["closure", "--model", "dihedral:5"],
    ["frobnicate"],
    ["spectrum", "--model", "dihedral:5", "--unknown"],
    ["spectrum", "/no/such/file.json"],
    ["audit", "--model", "dihedral:5", "--axis", "2,2"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_verify_gm_on_abstract_file(tmp_path, capsys):
    from helpers import alg
    from gmlab.axioms import AbstractAlgebra

    X = AbstractAlgebra.from_gm(alg("dihedral:5")).perturbed(0, 1, 2, 1)
    path = tmp_path / "x.json"
    path.write_text(json.dumps(X.to_json()))
    code, out, _ = run(capsys, "verify-gm", str(path))
    assert code == 1 and not json.loads(out)["results"]["pass"]


def test_invalid_system_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"p": 5, "labels": list("abcde"), "conj": [[0] * 5] * 5}))
    assert run(capsys, "validate", str(path))[0] == 1
    assert run(capsys, "spectrum", "--model", f"file:{path}")[0] == 2
