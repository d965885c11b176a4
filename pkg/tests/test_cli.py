import json
import math
import os

import pytest

from divschur.cli import ExperimentConfig, Report, describe, emit, render, run
from divschur.cli.config import KINDS, OUTPUT_DIR_ENV, SCHEMAS
from divschur.cli.kinds import uniform_grid
from divschur.cli.main import main
from divschur.cli.report import close_case, fmt_float, le_case, to_json
from divschur.cli.selftest import run_selftest
from divschur.errors import ConfigInvalid, IoFailure

CONFIG_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "configs")


def cfg(kind, **params):
    return ExperimentConfig(name=kind, kind=kind, parameters=params)


def write(tmp_path, d, name="c.json"):
    p = tmp_path / name
    p.write_text(json.dumps(d))
    return str(p)


# ------------------------------------------------------------- config

def test_all_kinds_have_schemas():
    assert set(KINDS) == {"divdiff-oracle", "torus-expansion", "moi-bound", "cayley-check",
                          "split-partition", "scaling-law", "toeplitz-bound", "pinching",
                          "besov-scaling", "main-theorem-probe"}


def test_randomized_kinds_require_seed():
    for kind, schema in SCHEMAS.items():
        if "seed" in schema:
            with pytest.raises(ConfigInvalid):
                cfg(kind)


@pytest.mark.parametrize("bad", [
    {"name": "x", "kind": "pinching", "parameters": {"seed": 1}},
    {"schema_version": 2, "name": "x", "kind": "pinching", "parameters": {"seed": 1}},
    {"schema_version": 1, "name": "x", "kind": "nope"},
    {"schema_version": 1, "name": "x", "kind": "pinching", "parameters": {"seed": 1.5}},
    {"schema_version": 1, "name": "x", "kind": "pinching", "parameters": {"seed": 1, "z": 0}},
    {"schema_version": 1, "name": "x", "kind": "moi-bound",
     "parameters": {"seed": 1, "exponents": [0, 2]}},
    {"schema_version": 1, "name": "", "kind": "pinching", "parameters": {"seed": 1}},
    {"schema_version": 1, "name": "x", "kind": "pinching", "extra": 1},
])
def test_invalid_configs(bad):
    with pytest.raises(ConfigInvalid):
        ExperimentConfig.from_dict(bad)


def test_defaults_and_inf_strings():
    c = cfg("pinching", seed=3, pinch_exponents=[1, "inf"])
    assert c.parameters["pinch_exponents"] == [1.0, math.inf]
    assert c.parameters["trials"] == 100


def test_load_errors(tmp_path):
    with pytest.raises(ConfigInvalid):
        ExperimentConfig.load(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ConfigInvalid):
        ExperimentConfig.load(p)


def test_output_override(monkeypatch, tmp_path):
    c = ExperimentConfig("x", "pinching", {"seed": 1}, output_path="out/x.json")
    assert c.resolved_output(".csv") == "out/x.csv"
    monkeypatch.setenv(OUTPUT_DIR_ENV, str(tmp_path))
    assert c.resolved_output() == str(tmp_path / "x.json")


def test_describe():
    d = describe("moi-bound")
    assert d["seed"]["required"] and d["N"]["default"] == 16
    with pytest.raises(ConfigInvalid):
        describe("nope")


def test_uniform_grid():
    assert list(uniform_grid(4, 2)) == [0, 0.5, 1, 1.5]


# ------------------------------------------------------------- report

def test_floats_17_digits():
    assert fmt_float(0.1) == "0.10000000000000001"
    assert fmt_float(math.inf) == '"inf"' and fmt_float(math.nan) == '"nan"'
    assert json.loads(to_json({"a": [1.5, True, None, "s"]})) == {"a": [1.5, True, None, "s"]}


def test_cases_record_slack():
    c = le_case("x", 1.0, 2.0)
    assert c["slack"] == 1.0 and c["passed"]
    c = close_case("y", 1.0, 1.5, 0.1)
    assert not c["passed"] and c["error"] == 0.5 and c["slack"] == pytest.approx(-0.4)


def test_empty_report_is_valid_json():
    r = Report(config={"name": "e"})
    d = json.loads(render(r, "json"))
    assert d["cases"] == [] and d["summary"]["cases"] == 0 and d["summary"]["passed"]
    assert d["provenance"]["fourier_convention"]


def test_violation_reported_first():
    r = Report(config={}, cases=[le_case("a", 1, 2), le_case("b", 3, 2, seed=5)])
    s = r.summary()
    assert not r.passed and s["violations"] == 1 and s["first_violation"]["seed"] == 5


def test_emit_io_failure(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(IoFailure):
        emit(Report(config={}), "json", blocker / "sub" / "r.json")


def test_unknown_format():
    with pytest.raises(ValueError):
        render(Report(config={}), "xml")


# ------------------------------------------------------------- runs

def test_divdiff_oracle_run():
    r = run(cfg("divdiff-oracle", seed=7))
    assert r.passed and len(r.cases) == 400
    assert max(c["error"] / c["bound"] for c in r.cases) <= 1


def test_split_run():
    r = run(cfg("split-partition", functions=["sin"], orders=[2], radii=[1.0], N=16))
    assert r.passed and r.cases[0]["lhs"] <= 1e-9


def test_moi_run():
    r = run(cfg("moi-bound", seed=1, N=16, trials=100, exponents=[2, 2]))
    assert r.passed and len(r.cases) == 100


def test_moi_regime_error_is_recorded():
    r = run(cfg("moi-bound", seed=1, exponents=[4, 4]))
    assert r.error["type"] == "RegimeError" and not r.passed


def test_scaling_csv_columns(tmp_path):
    c = cfg("scaling-law", seed=2, N=8, L=4.0, restarts=2, max_iters=20, pointwise_trials=5,
            rel_tol=0.5)
    text = render(run(c), "csv")
    rows = text.splitlines()
    assert rows[0] == "lambda,estimate,ratio_to_lambda_n" and len(rows) == 4


def test_byte_identical_reruns(tmp_path):
    c = cfg("torus-expansion", seed=4, max_n=2, max_k=3, trials=3)
    a = emit(run(c), "json", tmp_path / "a.json")
    b = emit(run(c), "json", tmp_path / "b.json")
    assert open(a, "rb").read() == open(b, "rb").read()


# ------------------------------------------------------------- command line

def test_main_run_pass(tmp_path, capsys):
    d = {"schema_version": 1, "name": "p", "kind": "pinching",
         "parameters": {"seed": 1, "trials": 5}, "output_path": str(tmp_path / "p.json")}
    assert main(["run", write(tmp_path, d), "--csv"]) == 0
    assert (tmp_path / "p.json").exists() and (tmp_path / "p.csv").exists()
    assert capsys.readouterr().out.startswith("PASS pinching")


def test_main_run_violation(tmp_path):
    d = {"schema_version": 1, "name": "v", "kind": "split-partition",
         "parameters": {"tol": -1.0}, "output_path": str(tmp_path / "v.json")}
    assert main(["run", write(tmp_path, d)]) == 1
    rep = json.loads((tmp_path / "v.json").read_text())
    assert rep["summary"]["first_violation"]["f"] == "sin"


def test_main_run_errors(tmp_path):
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    d = {"schema_version": 1, "name": "e", "kind": "moi-bound",
         "parameters": {"seed": 1, "exponents": [4, 4]}, "output_path": str(tmp_path / "e.json")}
    assert main(["run", write(tmp_path, d)]) == 2
    assert json.loads((tmp_path / "e.json").read_text())["error"]["type"] == "RegimeError"


def test_main_list_and_describe(capsys):
    assert main(["list-kinds"]) == 0
    assert capsys.readouterr().out.split() == list(KINDS)
    assert main(["describe", "pinching"]) == 0
    assert "seed" in json.loads(capsys.readouterr().out)
    assert main(["describe", "nope"]) == 2


def test_selftest():
    results = run_selftest()
    assert results and all(ok for _, ok, _ in results)
    assert main(["selftest"]) == 0


def test_shipped_configs_validate():
    names = sorted(os.listdir(CONFIG_DIR))
    assert len(names) == len(KINDS)
    kinds = {ExperimentConfig.load(os.path.join(CONFIG_DIR, n)).kind for n in names}
    assert kinds == set(KINDS)
