import json
import os
import subprocess
import sys

import pytest

from wittforge.cli import main, run


def call(*argv):
    result = run(list(argv))
    return result.exit_code, result.to_json()


@pytest.fixture
def psi4_file(tmp_path):
    path = tmp_path / "psi4.json"
    path.write_text(json.dumps([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]))
    return str(path)


def test_pfaffian_from_file(psi4_file):
    code, out = call("pfaffian", "--ring", "Z", "--matrix", psi4_file)
    assert code == 0
    assert out == {"status": "ok", "ring": "Z", "pfaffian": "1"}


def test_pfaffian_ring_from_json():
    code, out = call("pfaffian", "--matrix", '{"ring": "GF(7)", "rows": [[0, 3], [-3, 0]]}')
    assert code == 0 and out["pfaffian"] == "3" and out["ring"] == "GF(7)"


def test_suslin():
    code, out = call("suslin", "--ring", "Z", "--a", "[1,2,3]", "--b", "[1,0,0]")
    assert code == 0
    assert out["size"] == "4" and len(out["matrix"]) == 4
    assert out["det"] == "1"


def test_suslin_check():
    code, out = call("suslin-check", "--ring", "Z", "--a", "[2,3]", "--b", "[5,7]")
    assert code == 0 and out["det"] == out["ab_power"] == "31" and out["equal"] is True


def test_kummer():
    code, out = call("kummer", "--p", "17", "--a", "3")
    assert code == 0
    assert out["p_congruent_1_mod_8"] and out["a_nonsquare"] and out["irreducible"]


def test_kummer_sweep_and_error():
    code, out = call("kummer-sweep", "--p", "41")
    assert code == 0 and out["checked"] == "20" and out["counterexamples"] == []
    code, out = call("kummer-sweep", "--p", "13")
    assert code == 2 and out["status"] == "error"


def test_forms():
    assert call("psi", "--rank", "2")[1]["matrix"] == [["0", "1"], ["-1", "0"]]
    assert call("sigma", "--rank", "2")[1]["matrix"] == [["0", "1"], ["1", "0"]]
    assert call("witt-inv", "--matrix", "[[0,1],[-1,0]]")[1]["matrix"] == [["0", "1"], ["-1", "0"]]
    assert call("hyperbolic", "--matrix", "[[1,0],[0,1]]")[1]["matrix"] == [["0", "1"], ["-1", "0"]]


def test_verify_equiv():
    cert = json.dumps({"ring": "GF(7)", "size": 4, "steps": [[1, 3, "2"]]})
    code, out = call("verify-equiv", "--ring", "GF(7)", "--matrix", "[[0,1],[-1,0]]", "--other", "[[0,5],[-5,0]]", "--certificate", cert)
    assert code == 1 and out["valid"] is False
    empty = json.dumps({"size": 4, "steps": []})
    code, out = call("verify-equiv", "--ring", "GF(7)", "--matrix", "[[0,1],[-1,0]]", "--other", "[[0,1],[-1,0]]", "--certificate", empty)
    assert code == 0 and out["valid"] is True


def test_sp_check():
    assert call("sp-check", "--ring", "GF(7)", "--matrix", "[[1,3],[0,1]]")[0] == 0
    code, out = call("sp-check", "--ring", "GF(7)", "--matrix", "[[2,0],[0,1]]")
    assert code == 1 and out["symplectic"] is False


def test_orbit():
    code, out = call("orbit", "--ring", "Z/4", "--n", "2", "--group", "special-linear")
    assert code == 0
    assert out == {
        "status": "ok",
        "ring": "Z/4",
        "n": "2",
        "group": "special-linear",
        "orbit_count": "1",
        "orbits": [{"size": "12", "representative": ["0", "1"]}],
    }
    code, out = call("orbit", "--ring", "GF(3)", "--n", "4", "--group", "elementary-symplectic", "--start", "[1,0,0,0]")
    assert code == 0 and out["orbits"][0]["size"] == "80"


def test_orbit_budget_error():
    code, out = call("orbit", "--ring", "GF(7)", "--n", "6", "--budget", "100")
    assert code == 2 and "BudgetExceededError" in out["error"]


def test_factorizations():
    code, out = call("whitehead", "--ring", "GF(7)", "--matrix", "[[3]]")
    assert code == 0 and out["matches"] is True
    code, out = call("block-swap", "--r", "2", "--s", "1")
    assert code == 0 and out["matches"] is True
    assert call("block-swap", "--r", "1", "--s", "1")[0] == 2


def test_constructions_random_and_from_file(tmp_path):
    code, out = call("lemma21", "--ring", "GF(3)", "--n", "1", "--s", "1", "--seed", "5")
    assert code == 0 and out["result"]["witness_matches"] is True
    path = tmp_path / "in21.json"
    path.write_text(json.dumps(out["input"]))
    code2, out2 = call("lemma21", "--input", str(path))
    assert code2 == 0 and out2["result"] == out["result"]

    code, out = call("lemma35", "--ring", "GF(7)", "--seed", "1")
    assert code == 0
    assert out["result"]["psi_t_chi1_psi_eq_chi2"] is True
    assert "psi_t_chi2_psi_eq_chi1" in out["result"]


def test_stabilize_command_rejects_bad_certificate():
    bad = {
        "ring": "GF(7)",
        "phi": [[2, 0], [0, 1]],
        "chi": [[0, 1], [-1, 0]],
        "s": 0,
        "phi1": {"size": 2, "steps": []},
    }
    code, out = call("lemma21", "--input", json.dumps(bad))
    assert code == 2 and "CertificateError" in out["error"]


@pytest.mark.parametrize(
    "argv",
    [
        ["nope"],
        ["pfaffian", "--matrix", "[[0,1]"],
        ["pfaffian", "--ring", "GF(6)", "--matrix", "[[0,1],[-1,0]]"],
        ["pfaffian", "--matrix", "[[1,1],[-1,0]]"],
        ["psi", "--rank", "3"],
    ],
)
def test_errors_exit_two(argv):
    code, out = call(*argv)
    assert code == 2 and out["status"] == "error"


def test_verify_all_single_suite():
    code, out = call("verify-all", "--suite", "suslin", "--seed", "3")
    assert code == 0 and out["ok"] is True
    assert [s["suite"] for s in out["suites"]] == ["suslin"]


def test_timing_flag_only_adds_elapsed():
    _, plain = call("kummer", "--p", "17", "--a", "3")
    _, timed = call("kummer", "--p", "17", "--a", "3", "--timing")
    assert "elapsed_ms" not in plain
    assert {k: v for k, v in timed.items() if k != "elapsed_ms"} == plain


def test_main_prints_json(capsys):
    assert main(["kummer", "--p", "17", "--a", "3", "--pretty"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("{\n")
    assert json.loads(text)["irreducible"] is True


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "wittforge", "psi", "--rank", "2", "--ring", "GF(5)"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["matrix"] == [["0", "1"], ["4", "0"]]


def test_budget_flag_does_not_leak(monkeypatch):
    monkeypatch.delenv("WITTFORGE_BUDGET", raising=False)
    call("orbit", "--ring", "GF(2)", "--n", "2", "--budget", "10")
    assert "WITTFORGE_BUDGET" not in os.environ


def test_budget_env_var(monkeypatch):
    monkeypatch.setenv("WITTFORGE_BUDGET", "10")
    code, out = call("orbit", "--ring", "GF(3)", "--n", "4")
    assert code == 2 and "budget" in out["error"]
