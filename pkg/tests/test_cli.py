import json
import math
import subprocess
import sys

import numpy as np
import pytest

from pbalgebra.cli import main
from pbalgebra.serialize import decode_matrix, dumps, encode_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_matrix_encoding_roundtrip():
    x = np.array([[1 + 2j, -0.5], [math.pi, 1e-300j]])
    enc = encode_matrix(x)
    assert enc["dim"] == 2 and enc["data"][0] == [1.0, 2.0]
    np.testing.assert_array_equal(decode_matrix(enc), x)


def test_gen_s1(capsys):
    code, data, _ = run_json(capsys, "gen", "--s", "1")
    assert code == 0
    a = decode_matrix(data["operators"]["a"])
    np.testing.assert_array_equal(a, [[0, 1], [0, 0]])
    assert "generators" not in data


def test_gen_s0(capsys):
    code, data, _ = run_json(capsys, "gen", "--s", "0")
    assert code == 0
    for m in data["operators"].values():
        assert m == {"dim": 1, "data": [[0.0, 0.0]]}


def test_gen_s2_has_M(capsys):
    code, data, _ = run_json(capsys, "gen", "--s", "2")
    M = decode_matrix(data["generators"]["M"])
    assert M[1, 2] == -1 and np.count_nonzero(M) == 1


def test_gen_invalid_s(capsys):
    code, out, err = run(capsys, "gen", "--s", "-1")
    assert code == 2 and out == "" and "s >= 0" in err


@pytest.mark.parametrize("s,dim", [(1, 3), (2, 8), (5, 35)])
def test_closure(capsys, s, dim):
    code, data, _ = run_json(capsys, "closure", "--s", str(s))
    assert code == 0
    assert data["dim_algebra"] == dim == data["expected"]
    assert data["is_su_n"] is True
    assert data["max_relation_residual"] < 1e-12


def test_closure_size_guard(capsys):
    code, out, err = run(capsys, "closure", "--s", "31")
    assert code == 2 and "--force" in err and out == ""


@pytest.mark.parametrize("s", [2, 10])
def test_verify_passes(capsys, s):
    code, data, _ = run_json(capsys, "verify", "--s", str(s))
    assert code == 0 and data["passed"]
    assert all(c["passed"] for c in data["checks"])


def test_verify_forced_failure(capsys):
    code, data, err = run_json(capsys, "verify", "--s", "2", "--tolerance-override", "1e-30")
    assert code == 1 and not data["passed"]
    assert data["worst"] in err


def test_tolerance_env_var(capsys, monkeypatch):
    monkeypatch.setenv("PB_ALGEBRA_TOLERANCE", "1e-30")
    code, _, _ = run(capsys, "verify", "--s", "2")
    assert code == 1
    # flag has higher precedence than the environment
    code, _, _ = run(capsys, "verify", "--s", "2", "--tolerance-override", "1e-10")
    assert code == 0


def test_susy_doublets(capsys):
    code, data, _ = run_json(capsys, "susy", "--s", "8", "--k", "2")
    assert code == 0
    assert [d["eigenvalue"] for d in data["doublets"]] == [1, 3, 6, 10, 15, 21, 28]
    assert data["hamiltonian_equivalence"]["coupling_map"] == "g_susy = g * sqrt(k!)"
    assert data["hamiltonian_equivalence"]["relative_residual"] < 1e-12


def test_susy_minimal(capsys):
    code, data, _ = run_json(capsys, "susy", "--s", "1", "--k", "1")
    assert code == 0
    q2 = next(r for r in data["relations"] if r["relation_name"] == "Q^2 = 0")
    assert q2["interior_residual"] == 0 and q2["boundary_residual"] == 0


def test_susy_k_too_large(capsys):
    code, out, err = run(capsys, "susy", "--s", "4", "--k", "5")
    assert code == 2 and out == ""


def test_mass_headline_alpha(capsys):
    code, data, _ = run_json(capsys, "mass", "--inverse-alpha", "137")
    assert code == 0
    f = data["rows"][3]
    assert f["label"] == "f" and f["predicted_ratio"] == pytest.approx(5022.17, abs=0.01)
    assert data["provenance"]["inverse_alpha"] == "flag"


def test_mass_defaults(capsys):
    code, data, _ = run_json(capsys, "mass")
    assert data["rows"][1]["predicted_ratio"] == pytest.approx(205.554, abs=5e-4)
    assert data["provenance"] == {"inverse_alpha": "default", "experimental_ratios": "shipped"}


def test_mass_table_format(capsys):
    code, out, _ = run(capsys, "mass", "--inverse-alpha", "137", "--format", "table")
    assert code == 0 and "5022.173828" in out


def test_mass_config(capsys, tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"inverse_alpha": 137, "experimental_ratios": {"mu": 200.0}}))
    code, data, _ = run_json(capsys, "mass", "--config", str(cfg))
    assert code == 0
    assert data["inverse_alpha"] == 137
    assert data["rows"][1]["experimental_ratio"] == 200.0
    assert data["rows"][2]["experimental_ratio"] is None


@pytest.mark.parametrize("content", ["{not json", "[1, 2]", '{"experimental_ratios": {"mu": -1}}'])
def test_mass_malformed_config(capsys, tmp_path, content):
    cfg = tmp_path / "bad.json"
    cfg.write_text(content)
    code, out, err = run(capsys, "mass", "--config", str(cfg))
    assert code == 2 and out == "" and err


def test_missing_config(capsys, tmp_path):
    code, _, _ = run(capsys, "mass", "--config", str(tmp_path / "nope.json"))
    assert code == 2


@pytest.mark.parametrize("argv", [
    ["gen", "--s", "3"],
    ["closure", "--s", "2"],
    ["verify", "--s", "3"],
    ["susy", "--s", "5", "--k", "2"],
    ["mass"],
])
def test_json_roundtrip_bytes(capsys, argv):
    _, out, _ = run(capsys, *argv, "--format", "json")
    assert dumps(json.loads(out)) == out


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out.json"
    code, out, _ = run(capsys, "closure", "--s", "1", "--format", "json", "--output", str(path))
    assert code == 0 and out == ""
    assert json.loads(path.read_text())["dim_algebra"] == 3


def test_piped_default_is_json():
    proc = subprocess.run([sys.executable, "-m", "pbalgebra", "closure", "--s", "1"],
                          capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["dim_algebra"] == 3
    assert proc.stderr == ""


def test_usage_error_exit_code():
    proc = subprocess.run([sys.executable, "-m", "pbalgebra", "bogus"], capture_output=True)
    assert proc.returncode == 2
