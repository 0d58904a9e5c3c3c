import io
import json
import subprocess
import sys

import pytest

from lieverify import cli


def run(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv)
    return code, json.loads(text)


def claim(doc, prefix):
    return next(c for c in doc["claims"] if c["description"].startswith(prefix))


def test_first_degree_p5():
    code, doc = run_json("first-degree", "--p", "5", "--r", "1", "--index", "1")
    assert code == 0
    c = claim(doc, "first nonzero degree")
    assert (c["expected"], c["computed"], c["pass"]) == (7, 7, True)


def test_first_degree_p2():
    code, doc = run_json("first-degree", "--p", "2", "--r", "1", "--index", "1")
    c = claim(doc, "first nonzero degree")
    assert code == 0 and c["expected"] == c["computed"] == 1


def test_exponent_counterexample_note():
    code, doc = run_json("exponent", "--family", "GL", "--n", "4", "--p", "3", "--r", "1")
    assert code == 0
    assert doc["data"]["exponent"] == 9
    assert any("h = 4 > p = 3" in n for n in doc["notes"])


def test_exponent_claim_when_h_le_p():
    code, doc = run_json("exponent", "--family", "GL", "--n", "3", "--p", "3")
    assert code == 0 and claim(doc, "exponent of U")["computed"] == 3


@pytest.mark.parametrize(
    "argv",
    [
        ["field-info", "--p", "2", "--r", "3"],
        ["field-info", "--p", "3", "--r", "2", "--modulus", "x^2+1"],
        ["root-system", "--type", "G", "--rank", "2"],
        ["divisibility", "--type", "C", "--rank", "3", "--lattice", "weight"],
        ["divisibility", "--type", "B", "--rank", "3", "--lattice", "root"],
        ["regular-subgroup", "--family", "GL", "--n", "3", "--p", "3", "--r", "2"],
        ["regular-subgroup", "--family", "Sp", "--n", "4", "--p", "5"],
        ["fixed-flags", "--family", "GL", "--n", "3", "--p", "3"],
        ["fixed-flags", "--family", "GL", "--n", "3", "--p", "2", "--r", "2"],
        ["orbits", "--family", "GL", "--n", "3", "--p", "3"],
        ["invariants", "--p", "3", "--r", "2", "--index", "2", "--max-degree", "10"],
        ["first-degree", "--p", "7", "--r", "2", "--index", "2"],
        ["bockstein", "--p", "7", "--r", "1"],
        ["bockstein", "--p", "5", "--r", "2"],
        ["root-action", "--family", "Sp", "--n", "4", "--p", "5"],
        ["root-action", "--family", "SL", "--n", "3", "--p", "2", "--r", "2"],
    ],
)
def test_subcommands_pass(argv):
    code, doc = run_json(*argv)
    assert code == 0, doc
    assert doc["pass"] is True and doc["command"] == argv[0]
    assert doc["statement"]


def test_root_system_data():
    _, doc = run_json("root-system", "--type", "C", "--rank", "2")
    assert doc["data"]["coxeter_number"] == 4
    assert [r["height"] for r in doc["data"]["positive_roots"]] == [1, 1, 2, 3]
    assert doc["data"]["good_primes"][0] == 3


def test_orbit_data():
    _, doc = run_json("orbits", "--family", "GL", "--n", "3", "--p", "3")
    assert doc["data"]["orbit_sizes"] == {"1": 1, "3": 17}


def test_sp_r2_not_constructed():
    code, doc = run_json("regular-subgroup", "--family", "Sp", "--n", "4", "--p", "3", "--r", "2")
    assert code == 0 and doc["claims"] == []
    assert any("not constructed" in n for n in doc["notes"])


def test_failed_claim_exit_1(monkeypatch):
    monkeypatch.setattr(cli, "first_nonzero_degree", lambda model: 0)
    code, doc = run_json("first-degree", "--p", "5")
    assert code == 1 and doc["pass"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ["first-degree", "--p", "5", "--bogus"],
        ["no-such-command"],
        ["field-info", "--p", "4"],
        ["field-info", "--p", "2", "--r", "2", "--modulus", "x^2+1"],
        ["regular-subgroup", "--family", "GL", "--n", "4", "--p", "3"],
        ["fixed-flags", "--family", "Sp", "--n", "4", "--p", "3"],
        ["first-degree", "--p", "5", "--index", "3"],
        ["exponent", "--family", "GL", "--n", "1", "--p", "2"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    code, text = run(*argv)
    assert code == 2 and text == ""


def test_budget_exceeded_exit_2(capsys):
    code, text = run("exponent", "--family", "GL", "--n", "4", "--p", "3", "--budget", "100")
    assert code == 2 and text == ""
    assert "exceeds" in capsys.readouterr().err


def test_flag_budget_exceeded_exit_2(capsys):
    code, _ = run("orbits", "--family", "GL", "--n", "3", "--p", "3", "--flag-budget", "10")
    assert code == 2


def test_budget_env_override(monkeypatch):
    monkeypatch.setenv(cli.BUDGET_ENV, "100")
    code, _ = run("exponent", "--family", "GL", "--n", "4", "--p", "3")
    assert code == 2


def test_table_format():
    code, text = run("first-degree", "--p", "5", "--format", "table")
    assert code == 0
    assert "[PASS]" in text and "overall: PASS" in text


def test_deterministic_output():
    argv = ["root-action", "--family", "Sp", "--n", "4", "--p", "3"]
    assert run(*argv)[1] == run(*argv)[1]
    assert "elapsed_ms" not in run(*argv)[1]


def test_timing_flag():
    _, doc = run_json("first-degree", "--p", "3", "--timing")
    assert "elapsed_ms" in doc


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "lieverify", "first-degree", "--p", "3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["pass"] is True
