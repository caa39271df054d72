import csv
import io
import json

import pytest

from hallflow import cli
from hallflow.presets import load_document


def write_config(tmp_path, doc, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_preset_passes(capsys):
    code, out, _ = run(capsys, "verify", "--figure", "3", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] and report["family"] == "A3"
    assert report["checks"]["momentum-x"]["passed"]
    assert report["pressure"]["concordance"] is False


def test_verify_counterexample_fails(tmp_path, capsys):
    doc = {"family": "expression", "params": load_document(1)["params"],
           "shape_constants": {"psi": "x**2*y**2"}}
    code, out, _ = run(capsys, "verify", "--config", write_config(tmp_path, doc),
                       "--out", str(tmp_path / "o"))
    assert code == 1 and "FAIL" in out
    report = json.loads((tmp_path / "o" / "report.json").read_text())
    assert not report["checks"]["integrability"]["passed"]


def test_constraint_violation_is_a_config_error(tmp_path, capsys):
    doc = {"family": "A3", "params": {"rho": 1.0, "mu": 0.5, "alpha1": 0.5, "alpha2": -0.5},
           "shape_constants": {"a": 1.0, "b": -0.5}}
    code, _, err = run(capsys, "verify", "--config", write_config(tmp_path, doc))
    assert code == 2 and "ConstraintViolationError" in err


@pytest.mark.parametrize("argv", [
    ["figure", "--figure", "9"],
    ["figure"],
    ["verify"],
    ["verify", "--figure", "1", "--grid", "1.5,3"],
    ["verify", "--figure", "1", "--window", "0,1,0"],
    ["verify", "--figure", "1", "--window", "1,0,0,1"],
    ["verify", "--figure", "1", "--tol", "-1"],
    ["verify", "--config", "/nonexistent/cfg.json"],
])
def test_usage_errors(argv, capsys):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["verify", "--projection", "abs"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        cli.main(["plot"])
    capsys.readouterr()


def test_invalid_json_config(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "eval", "--config", str(path))
    assert code == 2 and "not valid JSON" in err


def test_eval_points_and_field(tmp_path, capsys):
    doc = dict(load_document(1), points=[[0, 0], [0.5, -0.5]], grid=[5, 4])
    code, out, _ = run(capsys, "eval", "--config", write_config(tmp_path, doc), "--json",
                       "--out", str(tmp_path / "e"))
    assert code == 0
    result = json.loads(out)
    assert result["values"][0]["psi"] == 2.0
    assert result["thermo"] == "compatible"
    rows = list(csv.reader(io.StringIO((tmp_path / "e" / "field.csv").read_text())))
    assert rows[0] == ["x", "y", "psi", "u", "v", "p", "masked"] and len(rows) == 21


def test_contour_writes_files(tmp_path, capsys):
    code, out, _ = run(capsys, "contour", "--figure", "2", "--grid", "41,41",
                       "--levels", "15,20", "--out", str(tmp_path / "c"), "--json")
    assert code == 0
    result = json.loads(out)
    assert result["levels"] == [15.0, 20.0] and result["polylines"] > 0
    assert sorted(p.name for p in (tmp_path / "c").iterdir()) == ["streamlines.csv", "streamlines.svg"]


def test_figure_outputs(tmp_path, capsys):
    code, _, _ = run(capsys, "figure", "--figure", "6", "--grid", "51,51", "--out", str(tmp_path))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["figure6.csv", "figure6.svg", "figure6_closed.csv", "figure6_closed.svg",
                     "figure6_report.json"]
    report = json.loads((tmp_path / "figure6_report.json").read_text())
    assert report["passed"] and report["levels_traced"] == [15.0, 20.0, 25.0, 30.0, 40.0]


def test_sweep_with_infinite_permeability_and_error_rows(tmp_path, capsys):
    doc = dict(load_document(1), sweep={"param": "K", "values": [2.0, "inf", 0.0]})
    code, out, _ = run(capsys, "sweep", "--config", write_config(tmp_path, doc), "--json",
                       "--out", str(tmp_path / "s"))
    assert code == 0
    rows = json.loads(out)["rows"]
    assert rows[0][-1] == "" and rows[1][-1] == ""
    assert rows[1][7] < 1e-10
    assert rows[2][-1] == "ParameterError" and rows[2][1] is None
    text = (tmp_path / "s" / "sweep.csv").read_text().splitlines()
    assert text[0] == ",".join(cli.SWEEP_COLUMNS) and len(text) == 4


def test_sweep_linspace_and_shape_constant(tmp_path, capsys):
    doc = dict(load_document(1), sweep={"param": "shape:a", "values": {"start": 0.5, "stop": 1.5, "num": 3}})
    code, out, _ = run(capsys, "sweep", "--config", write_config(tmp_path, doc), "--json")
    assert code == 0
    assert [r[0] for r in json.loads(out)["rows"]] == [0.5, 1.0, 1.5]


@pytest.mark.parametrize("sweep", [
    {"param": "mu", "values": []},
    {"param": "mu", "values": {"start": 0, "stop": 1, "num": 0}},
    {"values": [1]},
])
def test_sweep_usage_errors(tmp_path, capsys, sweep):
    doc = dict(load_document(1), sweep=sweep)
    code, _, err = run(capsys, "sweep", "--config", write_config(tmp_path, doc))
    assert code == 2 and "usage error" in err


def test_unwritable_output_is_named(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    code, _, err = run(capsys, "verify", "--figure", "1", "--out", str(blocker / "sub"))
    assert code == 1 and str(blocker) in err
