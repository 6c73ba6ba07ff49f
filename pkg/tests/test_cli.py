import json
import shutil

import numpy as np
import pytest

from revpriv.cli import main
from revpriv.core import dump_problem, load_problem
from revpriv.reports import check, explain, verify_report

from conftest import random_problem


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_additive_counterexample_refuted(capsys, counterexample_path):
    code, out, err = run(capsys, "check", "--model", "additive", "--input", str(counterexample_path))
    assert code == 1
    rep = json.loads(out)
    cyc = rep["certificate"]["ry_cycle"]["cycle"]
    assert len(cyc) - 1 == 3
    assert "R^y cycle" in err


def test_monotone_counterexample_witness(capsys, counterexample_path):
    code, out, _ = run(capsys, "check", "--model", "monotone", "--input", str(counterexample_path), "--quiet")
    assert code == 0
    rep = json.loads(out)
    assert rep["witness"]["vertices"]
    assert verify_report(load_problem(counterexample_path.read_bytes()), rep)


def test_separable_projection(capsys, counterexample_path):
    code, out, _ = run(
        capsys, "check", "--model", "separable", "--target-order", "x>y>z>w", "--input", str(counterexample_path)
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["k"] == 1
    assert rep["witness"]["projection"] == ["x", "y", "z", "w"]


def test_separable_default_target_is_stated(capsys, counterexample_path):
    code, out, _ = run(capsys, "check", "--model", "separable", "--input", str(counterexample_path))
    rep = json.loads(out)
    assert code == 0 and rep["target_order"] == ["w", "x", "y", "z"]
    assert any("lexicographic" in n for n in rep["notes"])


def test_classic_contrast(capsys, cycle3_path):
    assert run(capsys, "check", "--model", "classic", "--input", str(cycle3_path))[0] == 1
    assert run(capsys, "check", "--model", "monotone", "--input", str(cycle3_path))[0] == 0


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--model", "levelk", "--input", "COUNTEREX"],
        ["check", "--model", "levelk", "--k", "0", "--input", "COUNTEREX"],
        ["check", "--model", "classic", "--k", "2", "--input", "COUNTEREX"],
        ["check", "--model", "separable", "--target-order", "x>y", "--input", "COUNTEREX"],
        ["check", "--model", "separable", "--target-order", "x>y>z>q", "--input", "COUNTEREX"],
        ["check", "--model", "additive", "--input", "/nonexistent.json"],
        ["check", "--model", "additive"],
        ["check", "--model", "levelk", "--k", "9", "--input", "COUNTEREX"],
    ],
)
def test_usage_errors_exit_2(capsys, counterexample_path, argv):
    argv = [str(counterexample_path) if a == "COUNTEREX" else a for a in argv]
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_argparse_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "--model", "bogus"])
    assert exc.value.code == 2


def test_validation_error_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"alternatives": ["x", "y"], "observations": [{"menu": ["x"], "choice": "y"}]}))
    code, _, err = run(capsys, "check", "--model", "classic", "--input", str(bad))
    assert code == 2 and "observations[0]" in err


def test_level_cap_env(capsys, counterexample_path, monkeypatch):
    monkeypatch.setenv("REVPRIV_LEVEL_CAP", "4")
    code, out, _ = run(capsys, "check", "--model", "levelk", "--k", "4", "--input", str(counterexample_path), "--quiet")
    assert code == 0 and json.loads(out)["k"] == 4
    monkeypatch.setenv("REVPRIV_LEVEL_CAP", "nope")
    assert run(capsys, "check", "--model", "levelk", "--k", "1", "--input", str(counterexample_path))[0] == 2


def test_csv_input_and_output_file(capsys, tmp_path, counterexample):
    src = tmp_path / "p.csv"
    src.write_text(dump_problem(counterexample, "csv"))
    dest = tmp_path / "report.json"
    code, out, _ = run(capsys, "check", "--model", "additive", "--input", str(src), "--output", str(dest), "--quiet")
    assert code == 1 and out == ""
    assert json.loads(dest.read_text())["rationalizable"] is False


def test_batch_mode(capsys, tmp_path, counterexample_path, cycle3_path):
    shutil.copy(counterexample_path, tmp_path / "a.json")
    shutil.copy(cycle3_path, tmp_path / "b.json")
    code, out, _ = run(capsys, "check", "--model", "monotone", "--input-dir", str(tmp_path))
    assert code == 0
    assert [item["input"] for item in json.loads(out)] == ["a.json", "b.json"]
    code, _, _ = run(capsys, "check", "--model", "classic", "--input-dir", str(tmp_path), "--quiet")
    assert code == 1


def test_generate_then_check(capsys, tmp_path):
    data, truth = tmp_path / "d.json", tmp_path / "t.json"
    code, _, _ = run(capsys, "generate", "--alternatives", "5", "--menus", "9", "--seed", "3",
                     "--output", str(data), "--truth", str(truth), "--quiet")
    assert code == 0
    p = load_problem(data.read_bytes())
    assert len(p.observations) == 9
    code, out, _ = run(capsys, "check", "--model", "additive", "--input", str(data), "--quiet")
    assert code == 0
    assert verify_report(p, json.loads(out))
    assert run(capsys, "generate", "--alternatives", "2", "--menus", "5")[0] == 2


def test_explain_counterexample(capsys, counterexample_path, tmp_path):
    csv_path = tmp_path / "system.csv"
    code, out, err = run(capsys, "explain", "--input", str(counterexample_path), "--system-csv", str(csv_path))
    assert code == 0
    doc = json.loads(out)
    assert doc["inequality_system"]["rows"] == 9
    assert [s["cycle"] for s in doc["ry_relations"] if s["y"] == "y"][0] is not None
    assert doc["verdicts"] == {"classic": False, "monotone": True, "separable": True, "additive": False}
    assert len(csv_path.read_text().splitlines()) == 10
    assert "R^y cycle" in err


def test_explain_empty(capsys, tmp_path):
    src = tmp_path / "e.json"
    src.write_text('{"alternatives": [], "observations": []}')
    code, out, _ = run(capsys, "explain", "--input", str(src), "--quiet")
    doc = json.loads(out)
    assert code == 0
    assert doc["revealed_relation"] == [] and doc["ry_relations"] == []
    assert doc["inequality_system"]["rows"] == 0


def test_explain_generated_all_pass():
    from revpriv.additive import generate_additive

    p, _ = generate_additive(4, 8, seed=11)
    doc = explain(p)
    assert doc["verdicts"]["additive"] and doc["verdicts"]["monotone"] and doc["verdicts"]["separable"]
    assert "additive" in doc["evidence"]
    assert all(s["cycle"] is None for s in doc["ry_relations"])


def test_timing_flag_only_when_requested(capsys, counterexample_path):
    _, out, _ = run(capsys, "check", "--model", "classic", "--input", str(counterexample_path), "--quiet")
    assert "elapsed_ms" not in json.loads(out)["diagnostics"]
    _, out, _ = run(capsys, "check", "--model", "classic", "--input", str(counterexample_path), "--quiet", "--timing")
    assert "elapsed_ms" in json.loads(out)["diagnostics"]


@pytest.mark.parametrize("seed", range(40))
@pytest.mark.parametrize("model", ["classic", "monotone", "separable", "levelk", "additive"])
def test_every_report_reverifies(seed, model):
    p = random_problem(np.random.default_rng(seed), max_alts=5, max_menus=8)
    rep = check(p, model, k=2 if model == "levelk" else None)
    round_tripped = json.loads(rep.to_json())
    assert verify_report(p, round_tripped)
