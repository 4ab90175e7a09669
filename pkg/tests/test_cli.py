import csv
import io
import json
import subprocess
import sys

import pytest

from weylforge.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jsf_text(capsys):
    code, out, _ = run(capsys, "jsf", "--system", "C3", "--p", "3", "--lambda", "2,1,2", "--basis", "chi")
    assert code == 0
    assert out.strip() == "chi(2,0,2) + 2*chi(0,3,0) - chi(0,0,2) + chi(1,0,1) - 2*chi(0,1,0) + chi(0,0,0)"
    code, out, _ = run(capsys, "jsf", "--system", "C3", "--p", "3", "--lambda", "0,0,2")
    assert out.strip() == "0 (empty sum)"
    code, out, _ = run(capsys, "jsf", "--system", "A1", "--p", "2", "--lambda", "0")
    assert code == 0 and out.strip() == "0 (empty sum)"


def test_jsf_simple_basis(capsys):
    code, out, _ = run(capsys, "jsf", "--system", "C3", "--p", "3", "--lambda", "2,2,1", "--basis", "simple")
    assert code == 0
    assert out.strip() == \
        "ch L(3,2,0) + 3*ch L(1,3,0) + 4*ch L(2,1,1) + 2*ch L(0,1,1) + 2*ch L(1,0,0)"


def test_jsf_json_schema_round_trip(capsys):
    code, out, _ = run(capsys, "jsf", "--system", "C3", "--p", "3", "--lambda", "1,0,1", "--format", "json")
    doc = json.loads(out)
    assert set(doc) >= {"schema_version", "system", "p", "command", "inputs", "branches", "outcome", "timings_ms"}
    assert doc["branches"] == [{"terms": [[[0, 1, 0], 1], [[0, 0, 0], -1]]}]
    assert json.loads(json.dumps(doc)) == doc


def test_jsf_csv(capsys):
    code, out, _ = run(capsys, "jsf", "--system", "C3", "--p", "3", "--lambda", "1,0,1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["branch", "weight", "chi"]
    assert rows[1:] == [["0", "0,1,0", "1"], ["0", "0,0,0", "-1"]]


def test_epsilon_input(capsys):
    code, out, _ = run(capsys, "jsf", "--system", "B3", "--p", "2", "--lambda", "1/2,1/2,1/2", "--basis-in", "epsilon",
                       "--format", "json")
    assert json.loads(out)["inputs"]["lambda"] == [0, 0, 1]
    code, _, err = run(capsys, "jsf", "--system", "G2", "--p", "2", "--lambda", "1,0", "--basis-in", "epsilon")
    assert code == 2 and "epsilon" in err


def test_usage_errors(capsys):
    code, _, err = run(capsys, "jsf", "--system", "C3", "--p", "3", "--lambda", "2,1")
    assert code == 2 and "error" in err
    code, _, _ = run(capsys, "jsf", "--system", "D3", "--p", "3", "--lambda", "0,0,0")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["jsf", "--system", "C3"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_missing_data_exit(capsys):
    code, _, err = run(capsys, "jsf", "--system", "B3", "--p", "2", "--lambda", "0,2,0", "--basis", "simple",
                       "--no-fixtures")
    # without literature data several columns survive, so several L-forms are printed
    assert code == 0


def test_decomp(capsys):
    code, out, _ = run(capsys, "decomp", "--system", "B3", "--p", "2", "--lambda", "0,2,0")
    assert code == 0
    assert "1 branch(es)" in out
    assert "(0, 1, 0)" in out and "literature" in out
    code, out, _ = run(capsys, "decomp", "--system", "C3", "--p", "3", "--lambda", "2,1,2", "--focus", "0,3,0;0,0,0",
                       "--branches")
    assert "2 branch(es)" in out and "branch 1:" in out and "constraint:" in out
    code, out, _ = run(capsys, "decomp", "--system", "C3", "--p", "3", "--lambda", "0,0,0", "--format", "json")
    assert json.loads(out)["branches"][0]["column"] == [[[0, 0, 0], 1]]


def test_decomp_branch_explosion(capsys):
    code, _, err = run(capsys, "decomp", "--system", "C3", "--p", "3", "--lambda", "2,1,2")
    assert code == 4 and "branches" in err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--scenario", "C3p3_second")
    assert code == 0 and "OBSTRUCTED_ALL_BRANCHES" in out and "MATCH" in out
    code, out, _ = run(capsys, "verify", "--scenario", "Bn_prop", "--n", "5")
    assert code == 0 and "support shape PASS" in out
    code, out, _ = run(capsys, "verify", "--scenario", "G2p2")
    assert "FIXTURE-DEPENDENT" in out
    code, _, err = run(capsys, "verify", "--scenario", "X9")
    assert code == 2


def test_verify_mismatch_exit(capsys, monkeypatch):
    import weylforge.cli as cli
    monkeypatch.setitem(cli.EXPECTED, "B3p2", "CONSISTENT")
    code, out, _ = run(capsys, "verify", "--scenario", "B3p2")
    assert code == 5 and "MISMATCH" in out


def test_verify_all_is_byte_stable(capsys):
    outs = []
    for workers in ("1", "3"):
        code, out, _ = run(capsys, "verify", "--all", "--workers", workers, "--format", "json", "--no-timings")
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert [b["scenario"] for b in doc["branches"]] == ["B3p2", "C3p3", "C3p3_second", "D4p2", "G2p2",
                                                      "Bn_prop(4)"]
    assert json.loads(json.dumps(doc)) == doc


def test_levi_command(capsys):
    code, out, _ = run(capsys, "levi", "--system", "B3", "--J", "2,3", "--restrict-nabla", "0,2,0")
    assert code == 0 and "type B2" in out and "equal" in out
    code, out, _ = run(capsys, "levi", "--system", "B3", "--J", "1,2,3", "--restrict-nabla", "1,0,0",
                       "--format", "json")
    doc = json.loads(out)
    assert doc["branches"][0]["character"] == [[[1, 0, 0], 1], [[0, 0, 0], 1]]
    code, _, _ = run(capsys, "levi", "--system", "B3", "--J", "1,3", "--restrict-nabla", "1,0,0")
    assert code == 2


def test_propagate_command(capsys):
    code, out, _ = run(capsys, "propagate", "--base", "C3_222", "--ambient", "F4")
    assert code == 0 and out.strip() == "F4 p=3 (*,2,2,2)"
    code, out, _ = run(capsys, "propagate", "--base", "all", "--ambient", "F4", "--merge")
    assert out.strip().splitlines() == ["F4 p=2 (1,1,*,*)", "F4 p=3 (*,2,2,{1,2})"]
    code, _, _ = run(capsys, "propagate", "--base", "D4_1111", "--ambient", "B3")
    assert code == 2


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "weylforge", "propagate", "--base", "C3_122", "--ambient", "F4"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "F4 p=3 (*,2,2,1)"
