from __future__ import annotations

import json
import subprocess
import sys

import pytest

from hecke_springer.cli import run

SL2_S = '{"lambda":[0],"word":[1]}'

COMMANDS = [
    ["weyl", "length", "--datum", "SL2", "--element", '{"lambda":[1],"word":[]}'],
    ["weyl", "reduced-word", "--datum", "GL2", "--element", '{"lambda":[1,0],"word":[]}'],
    ["weyl", "multiply", "--datum", "GL3", "--element", '{"lambda":[1,0,0]}', "--other", '{"word":[2]}'],
    ["weyl", "datum", "--datum", "PGL2"],
    ["hecke", "mul", "--datum", "SL2", "--left", SL2_S, "--right", SL2_S],
    ["hecke", "theta", "--datum", "GL2", "--lambda", "[0,-1]"],
    ["hecke", "center", "--datum", "SL2", "--lambda", "[1]"],
    ["hecke", "specialize", "--datum", "SL2", "--q", "1", "--json", SL2_S],
    ["hh", "bg", "--mode", "plain", "--N", "5", "--window", "3", "--cyclic"],
    ["hh", "bg", "--mode", "twisted", "--q", "2", "--N", "4", "--window", "3"],
    ["hh", "dg", "--n", "0", "--window", "3"],
    ["params", "sl2-table"],
    ["params", "enumerate", "--n", "2", "--budget", "1"],
    ["blocks", "decompose", "--json", '{"n":2,"entries":[{"label":"a","d":1,"r":2,"n":1}]}'],
    ["blocks", "enumerate", "--n", "3", "--catalog", "[[1,1],[1,3]]"],
    ["blocks", "embed", "--source", "[1,1]"],
]


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a[:2]))
def test_commands_emit_round_tripping_json(argv, capsys):
    code, out, _ = call(argv, capsys)
    assert code == 0
    data = json.loads(out)
    assert json.loads(json.dumps(data)) == data
    # deterministic
    code2, out2, _ = call(argv, capsys)
    assert out2 == out


def test_length_example(capsys):
    _, out, _ = call(COMMANDS[0], capsys)
    assert json.loads(out) == {"length": 2}


def test_quadratic_relation_example(capsys):
    _, out, _ = call(COMMANDS[4], capsys)
    terms = {tuple(t["word"]): t["coeff"] for t in json.loads(out)["terms"]}
    assert set(terms) == {(), (1,)}
    exps = lambda c: sorted((e["exp"][0], e["num"]) for e in c["terms"])
    assert exps(terms[()]) == [(2, "1")]
    assert exps(terms[(1,)]) == [(0, "-1"), (2, "1")]


def test_steinberg_verify(capsys):
    code, out, _ = call(["steinberg", "verify-sl2"], capsys)
    assert code == 0 and json.loads(out)["quadratic"] == "pass"
    code, out, _ = call(["steinberg", "verify-sl2", "--q-convention", "b"], capsys)
    assert code == 1 and json.loads(out)["error"] == "ModelInconsistent"


def test_domain_error_exit_code(capsys):
    code, out, _ = call(["params", "enumerate", "--n", "2", "--q", "-1"], capsys)
    assert code == 1 and json.loads(out)["error"] == "RootOfUnityQ"
    code, out, _ = call(["weyl", "length", "--datum", "E9", "--element", "{}"], capsys)
    assert code == 1


def test_usage_errors_list_flags(capsys):
    code, _, err = call(["weyl", "length", "--bogus", "1"], capsys)
    assert code == 2 and "--element" in err and "--datum" in err
    assert call(["frobnicate"], capsys)[0] == 2
    assert call(["hecke", "specialize", "--json", SL2_S], capsys)[0] == 2
    assert call(["weyl", "length", "--element", "not json"], capsys)[0] == 2


def test_verify_all_subset(tmp_path, capsys):
    code, out, err = call(["verify-all", "--only", "6,7,8", "--out", str(tmp_path), "--threads", "2"], capsys)
    assert code == 0
    assert json.loads(out)["all_pass"]
    assert "criterion  7" in err
    assert json.loads((tmp_path / "acceptance.json").read_text())["all_pass"]
    assert sorted(p.name for p in tmp_path.iterdir()) == ["acceptance.json", "acceptance.txt"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hecke_springer", "weyl", "list"],
                          capture_output=True, text=True, check=True)
    assert "SL2" in json.loads(proc.stdout)["data"]
