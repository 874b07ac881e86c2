import json
import subprocess
import sys
from pathlib import Path

import pytest

from semidual.cli import corpus_dir, main

CORPUS = corpus_dir()


def run_cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def test_multiplicity_example(capsys):
    code, rep, err = run_cli(capsys, "multiplicity", "--ideal", CORPUS / "xy.ideal", "--J", CORPUS / "m.ideal")
    assert code == 0 and rep["results"]["e"] == 2
    assert "multiplicity" in err


def test_search_example(capsys):
    code, rep, _ = run_cli(capsys, "search", "--ideal", CORPUS / "m2.ideal", "-p", 2, "--trials", 500, "--seed", 7)
    assert code == 0
    assert [c["label"] for c in rep["results"]["classes"]] == ["R", "D"]


def test_malformed_ideal_exits_2(capsys, tmp_path):
    bad = tmp_path / "bad.ideal"
    bad.write_text("vars: x y\nx^2 w\n")
    code, rep, err = run_cli(capsys, "hilbert", "--ideal", bad)
    assert code == 2 and rep["error"]["type"] == "ParseError"
    assert ":2:" in err


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    assert main(["search", "--ideal", str(CORPUS / "m2.ideal"), "--trials", "0"]) == 2
    capsys.readouterr()


def test_precondition_is_structured(capsys):
    code, rep, _ = run_cli(capsys, "canonical", "--ideal", CORPUS / "x2_xy.ideal")
    assert code == 2 and rep["error"]["kind"] == "precondition"
    code, rep, _ = run_cli(capsys, "semidualizing", "--ideal", CORPUS / "xy.ideal")
    assert code == 2 and rep["error"]["type"] == "NotArtinian"


def test_semidualizing_verdicts(capsys):
    code, rep, _ = run_cli(capsys, "semidualizing", "--ideal", CORPUS / "m2.ideal", "-p", 3, "-m", "D")
    assert code == 0 and rep["verdicts"]["semidualizing"] == "yes-up-to(8)"
    code, rep, _ = run_cli(capsys, "semidualizing", "--ideal", CORPUS / "m2.ideal", "-p", 3, "-m", "k")
    assert code == 1 and rep["verdicts"]["semidualizing"].startswith("no(")


def test_module_pipeline(capsys, tmp_path):
    out = tmp_path / "dual.json"
    code, _, _ = run_cli(capsys, "dual", "--ideal", CORPUS / "m2.ideal", "-p", 3, "-m", "R", "-o", out)
    assert code == 0
    dual = json.loads(out.read_text())
    module_file = tmp_path / "D.json"
    module_file.write_text(json.dumps(dual["results"]["module"]))
    code, rep, _ = run_cli(capsys, "resolve", "--ideal", CORPUS / "m2.ideal", "-p", 3, "-m", module_file, "-L", 3)
    assert code == 0 and rep["results"]["betti"] == [2, 3, 6, 12]
    code, rep, _ = run_cli(capsys, "dagger", "--ideal", CORPUS / "m2.ideal", "-p", 3, "-m", module_file)
    assert code == 0 and rep["verdicts"]["dagger"] == "pass"


def test_other_subcommands(capsys):
    for argv in (["decompose", "--ideal", CORPUS / "x2_xy.ideal"],
                 ["polarize", "--ideal", CORPUS / "m2.ideal"],
                 ["hilbert", "--ideal", CORPUS / "xy.ideal", "--d-max", 5],
                 ["additivity", "--ideal", CORPUS / "xy.ideal", "--J", CORPUS / "x2_y.ideal"],
                 ["canonical", "--ideal", CORPUS / "axes3.ideal"],
                 ["fatpoints", "--scheme", CORPUS / "three_points_211.points"]):
        code, rep, _ = run_cli(capsys, *argv)
        assert code == 0, argv
    code, rep, _ = run_cli(capsys, "hilbert", "--ideal", CORPUS / "xy.ideal", "--d-max", 5)
    assert rep["results"]["values"] == [1, 2, 2, 2, 2, 2]
    code, rep, _ = run_cli(capsys, "fatpoints", "--scheme", CORPUS / "three_points_211.points")
    assert rep["results"]["degree"] == rep["results"]["expected"] == 5


def test_prime_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("SEMIDUAL_PRIME", "3")
    code, rep, _ = run_cli(capsys, "semidualizing", "--ideal", CORPUS / "m2.ideal")
    assert rep["inputs"]["prime"] == 3
    monkeypatch.setenv("SEMIDUAL_PRIME", "many")
    assert main(["hilbert", "--ideal", str(CORPUS / "xy.ideal")]) == 2


def test_deterministic_reports(tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        assert main(["search", "--ideal", str(CORPUS / "x2_xy_y3.ideal"), "-p", "2", "--trials", "80",
                     "--seed", "5", "-o", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert b"timing" not in outs[0]


def test_timing_flag(capsys):
    code, rep, _ = run_cli(capsys, "hilbert", "--ideal", CORPUS / "xy.ideal", "--timing")
    assert "timing_seconds" in rep


def test_sweep_bundled_corpus(tmp_path):
    out = tmp_path / "sweep.json"
    assert main(["sweep", "-p", "3", "--trials", "20", "-o", str(out)]) == 0
    rep = json.loads(out.read_text())
    assert rep["results"]["counts"]["fail"] == 0
    assert len(rep["verdicts"]) >= 20


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "semidual", "decompose", "--ideal", str(CORPUS / "xy.ideal")],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdicts"]["decomposition"] == "pass"
