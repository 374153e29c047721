import json
import subprocess
import sys

import pytest

from lastmult.cli import RunConfig, UsageError, main, parse_tolerances


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out.out)


def test_multipliers_report_counts(capsys):
    code, doc = run_json(capsys, "multipliers")
    assert doc["schema"] == "1" and doc["pair_count"] == 28
    assert doc["distinct_basic"] == 3 and doc["jlm34_identity"]
    # the printed catalog has no vanishing determinant, so the claimed 14 is not reproduced
    assert doc["zero_pairs"] == 0 and code == 1 and "diff" in doc


def test_multipliers_k_independent(capsys):
    _, a = run_json(capsys, "multipliers", "--catalog", "prolonged")
    _, b = run_json(capsys, "multipliers", "--catalog", "prolonged", "--k", "2.0")
    assert a["zero_pairs"] == b["zero_pairs"] == 3
    assert a["distinct_basic"] == b["distinct_basic"] == 3


def test_lagrangians(capsys):
    code, doc = run_json(capsys, "lagrangians")
    assert code == 0 and doc["noether_counts"] == [5, 3, 3, 2]
    assert all(r["el_residual_max"] < 1e-8 for r in doc["lagrangians"])


def test_lagrangians_tight_tolerance_fails(capsys):
    code, doc = run_json(capsys, "lagrangians", "--tolerance", "el=1e-15")
    assert code == 1 and doc["passed"] is False


def test_hamiltonians(capsys):
    code, doc = run_json(capsys, "hamiltonians")
    assert code == 0 and doc["goldstein_transform"]["passed"]


def test_quantize_weyl(capsys):
    code, doc = run_json(capsys, "quantize", "--hamiltonian", "goldstein", "--scheme", "weyl")
    assert code == 0 and doc["x2_coefficient"] == pytest.approx(-3)


def test_quantize_split_ground_state(capsys):
    code, doc = run_json(capsys, "quantize", "--hamiltonian", "goldstein", "--scheme", "split-symmetric")
    assert code == 0 and doc["ground_state"]["E0"] == [0.5, 0.0]


def test_quantize_sho_schemes_agree(capsys):
    code, doc = run_json(capsys, "quantize", "--hamiltonian", "sho", "--scheme", "two-term-symmetric")
    assert code == 0 and all(doc["matches_other_schemes"].values())


def test_ladder(capsys):
    code, doc = run_json(capsys, "ladder", "--n", "2")
    assert code == 0 and doc["eigenvalues"] == [0.5, 1.5, 2.5]
    code, doc = run_json(capsys, "ladder", "--n", "2", "--k", "2")
    assert code == 0 and doc["eigenvalues"] == [1.0, 3.0, 5.0]


def test_ladder_zero_matches_ground_state(capsys):
    code, doc = run_json(capsys, "ladder", "--n", "0")
    assert code == 0 and doc["states"][0]["constant_vs_printed"] is not None


def test_ladder_negative_n_is_usage_error(capsys):
    code, out = run(capsys, "ladder", "--n", "-1")
    assert code == 2 and "usage error" in out.err


def test_verify_symmetries_variants(capsys):
    code, doc = run_json(capsys, "verify-symmetries", "--operator", "sho")
    assert code == 1
    failing = [g["generator"] for g in doc["operators"][0]["generators"] if not g["passed"]]
    assert failing == ["G1-"]
    code, _ = run_json(capsys, "verify-symmetries", "--operator", "sho", "--variant", "corrected")
    assert code == 0


def test_spectrum(capsys):
    code, doc = run_json(capsys, "spectrum")
    assert code == 0 and doc["max_deviation"] < 1e-3


def test_usage_errors(capsys):
    assert run(capsys, "quantize", "--scheme", "bogus")[0] == 2
    assert run(capsys, "ladder", "--k", "-1")[0] == 2
    assert run(capsys, "lagrangians", "--tolerance", "nonsense")[0] == 2


def test_deterministic_output(capsys):
    _, a = run(capsys, "lagrangians", "--seed", "3")
    _, b = run(capsys, "lagrangians", "--seed", "3")
    assert a.out == b.out


def test_out_file_and_text_format(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, _ = run(capsys, "spectrum", "--out", str(path))
    assert code == 0 and json.loads(path.read_text())["command"] == "spectrum"
    code, out = run(capsys, "spectrum", "--format", "text")
    assert code == 0 and "max_deviation" in out.out


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "lastmult", "spectrum", "--count", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["passed"]


def test_config_validation():
    with pytest.raises(UsageError):
        RunConfig(0.0, 0, {}, None, "json")
    assert parse_tolerances(["el=1e-3"])["el"] == 1e-3
