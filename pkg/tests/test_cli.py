import csv
import json
from fractions import Fraction
from pathlib import Path

import pytest

from dltzeta import catalog, engine
from dltzeta.cli import run
from dltzeta.model import load_model
from dltzeta.zeta import NormalZeta, zeta_normalize

DATA = Path(__file__).resolve().parent.parent / "data"


def call(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_cone(capsys):
    code, out, _ = call(capsys, "compute", "--model", DATA / "cone_n3_d2.json")
    assert code == 0
    assert "-3/2 (order <= 1)" in out and "-1 (order <= 1)" in out


def test_compute_json_round_trip(capsys):
    for name in ["cone_n3_d2.json", "cusp.json", "global_minimal.json", "toric_id.json"]:
        code, out, _ = call(capsys, "compute", "--model", DATA / name, "--format", "json")
        payload = json.loads(out)
        assert code == 0 and payload["ok"]
        model = load_model(DATA / name)
        assert NormalZeta.from_json(payload["zeta"]).structurally_equal(zeta_normalize(engine.compute_zeta(model)))


def test_oracle_match_and_csv(capsys, tmp_path):
    path = tmp_path / "series.csv"
    code, out, _ = call(
        capsys, "oracle", "--poly", "x^2*y^3", "--p", 2, "--depth", 5, "--model", DATA / "toric_id.json", "--csv", path
    )
    assert code == 0 and "MATCH" in out
    rows = list(csv.reader(path.open()))
    assert rows[0] == ["n", "coefficient_num", "coefficient_den"]
    assert len(rows) == 7


def test_oracle_mismatch_exit_code(capsys):
    code, out, _ = call(capsys, "oracle", "--poly", "x^2*y^2", "--p", 2, "--depth", 4, "--model", DATA / "toric_id.json")
    assert code == 1 and "MISMATCH" in out


def test_verify(capsys):
    code, out, _ = call(capsys, "verify", "--monomial", "2,3", "--seeds", 25)
    assert code == 0 and "25/25" in out


def test_poles_compare(capsys):
    code, out, _ = call(
        capsys, "poles", "--model", DATA / "cone_n3_d2.json", "--compare", DATA / "cone_n3_d2_dlt.json", "--format", "json"
    )
    cmp = json.loads(out)["comparison"]
    assert code == 0 and cmp["subset"] and cmp["equals_intersection_with_unit_interval"]


def test_top_cusp(capsys):
    code, out, _ = call(capsys, "top", "--model", DATA / "cusp.json", "--format", "json")
    assert code == 0
    assert json.loads(out)["poles"] == {"-1": 1, "-5/6": 1}


def test_top_needs_euler_numbers(capsys):
    code, _, err = call(capsys, "top", "--model", DATA / "cone_n3_d2.json")
    assert code == 2 and "E_SPECIALIZE" in err
    code, out, _ = call(capsys, "top", "--model", DATA / "cone_n3_d2.json", "--euler", "H=2")
    assert code == 0


def test_stringy(capsys):
    code, out, _ = call(capsys, "stringy", "--model", DATA / "stringy_example.json", "--euler", "X_minus_pt=2", "--euler", "sigma=2")
    assert code == 0 and "chi_st = 3" in out
    code, _, _ = call(capsys, "stringy", "--model", DATA / "stringy_example.json", "--drop-prefactor")
    assert code == 0


def test_toric_emit(capsys, tmp_path):
    path = tmp_path / "m.json"
    code, _, _ = call(capsys, "toric", "--monomial", "1,1", "--subdivide", "0,1", "--emit-model", path)
    assert code == 0
    m = load_model(path)
    assert sorted((D.N, D.v) for D in m.divisors) == [(1, 1), (1, 1), (2, 2)]


@pytest.mark.parametrize(
    "argv, code_name",
    [
        (["compute", "--model", "/nonexistent.json"], "E_MODEL"),
        (["oracle", "--poly", "x +", "--p", "2", "--depth", "1", "--model", str(DATA / "toric_id.json")], "E_PARSE"),
        (["oracle", "--poly", "x*y", "--p", "3", "--depth", "30", "--model", str(DATA / "toric_id.json")], "E_BUDGET"),
        (["toric", "--monomial", "1,1", "--subdivide", "0", "--emit-model", "/tmp/x.json"], "E_FAN"),
        (["toric", "--monomial", "a,b", "--emit-model", "/tmp/x.json"], "E_ARGS"),
    ],
)
def test_input_errors(capsys, argv, code_name):
    code, out, err = call(capsys, *argv, "--format", "json")
    assert code == 2
    payload = json.loads(out)
    assert payload["ok"] is False and payload["error"]["code"] == code_name
    code, _, err = call(capsys, *argv)
    assert code == 2 and err.startswith(f"error[{code_name}]")


def test_invalid_model_file(capsys, tmp_path):
    data = json.loads((DATA / "line.json").read_text())
    data["divisors"][0]["N"] = "0"
    data["divisors"][0]["v"] = "0"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    code, _, err = call(capsys, "compute", "--model", path)
    assert code == 2 and "(0,0)" in err
