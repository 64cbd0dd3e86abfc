import io
import json

import pytest

from fax.bench.rng import SplitMix64
from fax.cli import run

from conftest import DATA, SIGNATURE_REGEX
from oracles import random_dfa, random_word

THIRD_B = str(DATA / "third_b.aut")
SIGNATURES = str(DATA / "signatures.aut")


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_explain_signature_report():
    code, text = call("explain", "--regex", SIGNATURE_REGEX, "--word", "accc", "--bounds", "1:1",
                      "--target", "cxp", "--format", "json")
    assert code == 0
    doc = json.loads(text)
    assert doc["axps"] == [[1, 2], [1, 4]] and doc["cxps"] == [[1], [2, 4]]
    assert doc["decision"] == "reject" and doc["stats"]["complete"]


def test_text_and_json_agree():
    _, text = call("explain", "--automaton-file", THIRD_B, "--word", "bbbbb")
    _, js = call("explain", "--automaton-file", THIRD_B, "--word", "bbbbb", "--format", "json")
    doc = json.loads(js)
    for s, p in zip(doc["axps"], doc["patterns"]["axps"]):
        assert f"[{', '.join(map(str, s))}]" in text and p in text
    assert "AXps (2)" in text and "CXps (2)" in text


def test_axp_and_check():
    code, text = call("axp", "--automaton-file", THIRD_B, "--word", "bbbbb", "--bounds", "1:1")
    assert code == 0 and text.strip() == "axp: [3]  ..b.."
    code, text = call("check", "--automaton-file", THIRD_B, "--word", "bbbbb", "--axp", "3")
    assert code == 0 and text.startswith("OK")


def test_check_refutes_bad_claims():
    code, text = call("check", "--automaton-file", THIRD_B, "--word", "bbbbb", "--axp", "1,3")
    assert code == 1 and "not minimal" in text
    code, text = call("check", "--automaton-file", THIRD_B, "--word", "bbbbb", "--cxp", "1")
    assert code == 1 and text.startswith("FAIL")


def test_cxp_and_ffa():
    code, text = call("cxp", "--automaton-file", SIGNATURES, "--word", "accc", "--format", "json")
    assert code == 0 and json.loads(text)["cxp"] == [2, 4]
    code, text = call("ffa", "--automaton-file", SIGNATURES, "--word", "accc", "--format", "json")
    assert json.loads(text)["ffa"] == {"1": 1.0, "2": 0.5, "4": 0.5}


def test_no_cxp():
    code, text = call("cxp", "--regex", "(a|b)*", "--alphabet", "ab", "--word", "abba")
    assert code == 0 and "no CXp" in text


def test_timing_row_and_budget_exit():
    code, text = call("explain", "--automaton-file", SIGNATURES, "--word", "ceccd", "--bounds", "1:inf", "--timing")
    header, row = text.strip().splitlines()
    assert header.split("\t") == ["instance", "mode", "time_ms", "n_axps", "n_cxps", "complete"]
    assert row.split("\t")[3:] == ["5", "3", "1"]
    code, _ = call("explain", "--automaton-file", SIGNATURES, "--word", "ceccd", "--bounds", "1:inf", "--node-budget", "2")
    assert code == 2


def test_batch_mode(tmp_path):
    words = tmp_path / "words.txt"
    words.write_text("bbbbb\nabab\naaaaa\n")
    code, text = call("explain", "--automaton-file", THIRD_B, "--words-file", str(words), "--jobs", "3")
    rows = text.strip().splitlines()[1:]
    assert code == 0 and [r.split("\t")[0] for r in rows] == ["bbbbb", "abab", "aaaaa"]


@pytest.mark.parametrize("argv", [
    ["explain", "--word", "a"],
    ["explain", "--regex", "a", "--automaton-file", THIRD_B, "--word", "a"],
    ["explain", "--regex", "a(", "--word", "a"],
    ["explain", "--automaton-file", THIRD_B, "--word", "abc"],
    ["explain", "--automaton-file", "/nonexistent.aut", "--word", "a"],
    ["explain", "--automaton-file", THIRD_B, "--word", "ab", "--bounds", "2:3"],
    ["check", "--automaton-file", THIRD_B, "--word", "bbbbb"],
    ["check", "--automaton-file", THIRD_B, "--word", "bbbbb", "--axp", "9"],
])
def test_input_errors(argv, capsys):
    assert call(*argv)[0] == 1


def test_regex_file(tmp_path):
    path = tmp_path / "sigs.txt"
    path.write_text("# signatures\nabcd+\nbc+\n")
    code, text = call("explain", "--regex-file", str(path), "--word", "bcc", "--format", "json")
    assert code == 0 and json.loads(text)["decision"] == "accept"


def test_generators(tmp_path, monkeypatch):
    _, a = call("gen-maze", "--height", "8", "--width", "9", "--seed", "3")
    _, b = call("gen-maze", "--height", "8", "--width", "9", "--seed", "3")
    assert a == b and a.startswith("fax-maze v1")
    monkeypatch.setenv("FAX_SEED", "3")
    _, c = call("gen-maze", "--height", "8", "--width", "9", "--seed", "99")
    assert c == a
    aut = tmp_path / "c.aut"
    code, text = call("gen-corpus", "--length", "4", "--count", "2", "--alphabet-size", "3",
                      "--scale", "0.1", "--automaton-out", str(aut))
    assert code == 0 and "seed: " not in text and "spec: 4 2 3 3" in text
    code, _ = call("explain", "--automaton-file", str(aut), "--word", "abcabc")
    assert code == 0
    _, sizes = call("gen-maze", "--list-sizes")
    assert len(sizes.splitlines()) == 861


def test_check_closes_the_loop(tmp_path):
    from fax.automata import dump
    rng = SplitMix64(17)
    for i in range(200):
        a = random_dfa(rng, max_states=5, max_symbols=3)
        w = random_word(rng, a.alphabet, 1 + rng.randbelow(6))
        path = tmp_path / f"a{i}.aut"
        dump(a, path)
        bounds = ["1:1", "1:inf", "0:inf"][i % 3]
        code, text = call("explain", "--automaton-file", str(path), "--word", str(w), "--bounds", bounds,
                          "--format", "json")
        doc = json.loads(text)
        for kind in ("axp", "cxp"):
            for s in doc[kind + "s"]:
                code, out = call("check", "--automaton-file", str(path), "--word", str(w), "--bounds", bounds,
                                 f"--{kind}", ",".join(map(str, s)))
                assert code == 0, out
