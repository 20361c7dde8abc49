import json
import os
import subprocess
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
QUIVERS = os.path.join(ROOT, "quivers")


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "replalg.cli", *argv],
                          capture_output=True, text=True, timeout=600)
    return proc.returncode, proc.stdout, proc.stderr


def quiver(name):
    return os.path.join(QUIVERS, name)


def test_gldim_a2():
    code, out, _ = run_cli("gldim", "--quiver", quiver("a2.q"), "--m", "1", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["global_dimension"] == 2


def test_info_reports_dimension():
    code, out, _ = run_cli("info", "--quiver", quiver("a2.q"), "--m", "1", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["algebra_dim"] == 9
    assert report["results"]["maximal_paths"] == ["a"]


def test_indecs_and_orbits():
    code, out, _ = run_cli("indecs", "--quiver", quiver("a2.q"), "--m", "1", "--json")
    assert code == 0
    assert json.loads(out)["results"]["count"] == 9
    code, out, _ = run_cli("tau-orbits", "--quiver", quiver("a2.q"), "--m", "1", "--json")
    assert code == 0
    assert json.loads(out)["results"]["cardinalities"] == [4, 3, 1, 1]


def test_budget_exit_code():
    code, out, err = run_cli("indecs", "--quiver", quiver("kron.q"),
                             "--m", "1", "--budget", "25")
    assert code == 3
    assert "budget" in err


def test_malformed_quiver_exit_code(tmp_path):
    bad = tmp_path / "bad.q"
    bad.write_text("vertex 1\narrow broken\n")
    code, out, err = run_cli("gldim", "--quiver", str(bad), "--m", "1")
    assert code == 2
    assert "line 2" in err


def test_missing_quiver_file():
    code, _, err = run_cli("gldim", "--quiver", "/nonexistent.q", "--m", "1")
    assert code == 2


def test_strata():
    code, out, _ = run_cli("strata", "--quiver", quiver("a2.q"), "--m", "1",
                           "--k", "1", "--json")
    assert code == 0
    report = json.loads(out)
    assert sorted(report["results"]["u"]) == ["0,0|1,0", "0,1|1,0"]


def test_ar_quiver_dot(tmp_path):
    dot = tmp_path / "ar.dot"
    code, out, _ = run_cli("ar-quiver", "--quiver", quiver("a2.q"), "--m", "1",
                           "--dot", str(dot), "--json")
    assert code == 0
    assert dot.exists()
    text = dot.read_text()
    assert text.startswith("digraph ar_quiver {")
    assert json.loads(out)["results"]["mesh_violations"] == []


def test_construct_thm32_and_gldim_end_roundtrip(tmp_path):
    out_file = tmp_path / "m.json"
    code, out, _ = run_cli("construct", "thm32", "--quiver", quiver("a2.q"),
                           "--m", "1", "--d", "4", "--out", str(out_file), "--json")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["gldim_end"] == 4
    assert len(report["results"]["summands"]) == 7
    code, out, _ = run_cli("gldim-end", "--quiver", quiver("a2.q"), "--m", "1",
                           "--gencog", str(out_file), "--json")
    assert code == 0
    assert json.loads(out)["results"]["value"] == 4


def test_construct_E():
    code, out, _ = run_cli("construct", "E", "--quiver", quiver("a2.q"),
                           "--m", "1", "--i", "1", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["gldim_end"] == 3
    assert report["results"]["summand_count"] == 8


def test_gldim_end_with_summand_ids():
    # additive generator given by explicit catalog ids
    code, out, _ = run_cli("gldim-end", "--quiver", quiver("a2.q"), "--m", "1",
                           "--summands", "0,1,2,3,4,5,6,7,8", "--json")
    assert code == 0
    assert json.loads(out)["results"]["value"] == 2


def test_verify_thm1_exit_zero():
    code, out, _ = run_cli("verify", "thm1", "--quiver", quiver("a2.q"),
                           "--m", "1", "--samples", "25", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["results"]["verdict"] == "pass"
    assert report["results"]["params"]["achievable"] == [2, 3, 4]


def test_verify_unknown_suite_rejected():
    code, _, err = run_cli("verify", "nonsense", "--quiver", quiver("a2.q"))
    assert code == 2


def test_cache_roundtrip_and_corruption(tmp_path):
    cache = tmp_path / "cache"
    code, out1, _ = run_cli("indecs", "--quiver", quiver("a2.q"), "--m", "1",
                            "--cache", str(cache), "--json")
    assert code == 0
    files = list(cache.glob("catalog_*.json"))
    assert len(files) == 1
    code, out2, _ = run_cli("indecs", "--quiver", quiver("a2.q"), "--m", "1",
                            "--cache", str(cache), "--json")
    assert out1 == out2  # cached run is byte-identical
    # different prime: different fingerprint, cache miss
    code, _, _ = run_cli("indecs", "--quiver", quiver("a2.q"), "--m", "1",
                         "--prime", "101", "--cache", str(cache), "--json")
    assert len(list(cache.glob("catalog_*.json"))) == 2
    # corrupt cache: warn and recompute
    files[0].write_text("{ truncated")
    code, out3, err = run_cli("indecs", "--quiver", quiver("a2.q"), "--m", "1",
                              "--cache", str(cache), "--json")
    assert code == 0
    assert "warning" in err
    assert out3 == out1


def test_stdout_byte_identical():
    runs = [run_cli("verify", "thm32_all_d", "--quiver", quiver("a2.q"),
                    "--m", "1", "--json") for _ in range(2)]
    assert runs[0][0] == runs[1][0] == 0
    assert runs[0][1] == runs[1][1]


def test_timing_on_stderr_not_stdout():
    code, out, err = run_cli("gldim", "--quiver", quiver("a2.q"), "--m", "1")
    assert code == 0
    assert "time:" in err
    assert "time:" not in out


def test_exit_code_1_when_suite_reports_counterexample(monkeypatch, capsys):
    # a suite verdict of "fail" maps to exit code 1 with the report on stdout
    from replalg import cli
    from replalg import verify as vf

    def fake_verify(suite, quiver, **params):
        return {"suite": suite, "params": params, "verdict": "fail",
                "checks": [], "counterexamples": [{"witness": "X0"}],
                "wall_ms": 1}

    monkeypatch.setattr(vf, "verify", fake_verify)
    code = cli.main(["verify", "thm1", "--quiver", quiver("a2.q"), "--m", "1",
                     "--json"])
    out = capsys.readouterr().out
    assert code == 1
    assert "X0" in out
