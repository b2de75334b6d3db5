import io
import json

import pytest

from seqbes.cli import main
from seqbes.clp import Proof, check_proof


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def empty_base(tmp_path):
    f = tmp_path / "empty.bes"
    f.write_text("closure: st\n")
    return str(f)


@pytest.fixture
def prop_base(tmp_path):
    f = tmp_path / "prop.bes"
    f.write_text("closure: hs\nsimulation: full\nscope: q & r\n|- => @(q & r)\n")
    return str(f)


def test_prove_and_formats():
    code, text = run("prove", "q & r => q")
    assert code == 0 and "L&" in text
    code, text = run("prove", "q & r => q", "--json")
    pf = Proof.from_json(text)
    check_proof(pf)
    code, text = run("prove", "=> p | ~p", "--latex", "--cut-free-check", "--verify")
    assert code == 0 and "\\begin{prooftree}" in text and "verified" in text


def test_prove_negative():
    code, text = run("prove", "p => q")
    assert code == 1 and "p=T, q=F" in text


def test_derive(empty_base, prop_base):
    assert run("derive", empty_base, "=> p")[0] == 1
    assert run("derive", empty_base, "p => p")[0] == 0
    code, text = run("derive", prop_base, "@(q & r) => q")
    assert code == 0 and "L&" in text
    assert run("derive", empty_base, "=> p & q")[0] == 3


def test_support_modes(empty_base, prop_base):
    assert run("support", prop_base, "|= q & r", "--mode", "oracle")[0] == 1
    assert run("support", prop_base, "|= q", "--mode", "refute", "--budget", "0")[0] == 1
    assert run("support", empty_base, "|= p -> p", "--mode", "refute")[0] == 2
    assert run("support", empty_base, "p |= p")[0] == 0
    assert run("support", empty_base, "|= p -> p")[0] == 2


def test_extract(tmp_path):
    out = tmp_path / "report.json"
    code, text = run("extract", "p -> q, p => q", "--variant", "quasi", "--out", str(out))
    assert code == 0 and "cut-free proof" in text
    d = json.loads(out.read_text())
    assert d["variant"] == "quasi" and "rewritten" in d["stages"]
    check_proof(Proof.from_dict(d["final"]))
    assert run("extract", "p => q")[0] == 1


def test_counterexample():
    code, text = run("counterexample", "prop6")
    assert code == 0 and text.count("(ok)") == 6


def test_usage_errors(capsys, empty_base):
    assert run("prove", "p =>> q")[0] == 3
    assert run("frobnicate")[0] == 3
    assert run("prove")[0] == 3
    assert run("derive", "/nonexistent/base.bes", "=> p")[0] == 3
    assert run("support", empty_base, "|= p", "--budget", "-1")[0] == 3
    assert "position" in capsys.readouterr().err


def test_malformed_base_file_reports_line(tmp_path, capsys):
    f = tmp_path / "bad.bes"
    f.write_text("closure: st\n|- => p &\n")
    assert run("derive", str(f), "=> p")[0] == 3
    assert "line 2" in capsys.readouterr().err


def test_deterministic_output():
    a = run("extract", "(p -> q) -> p => p", "--json")
    b = run("extract", "(p -> q) -> p => p", "--json")
    assert a == b


def test_check_command(monkeypatch):
    monkeypatch.setenv("BES_SEED", "7")
    code, text = run("check", "--samples", "20")
    assert code == 0 and text.startswith("seed: 7")
    assert text.count("PASS") == 9
    code2, text2 = run("check", "--samples", "20", "--seed", "7")
    strip = lambda t: [line.split(", ")[0:2] for line in t.splitlines()]  # noqa: E731
    assert strip(text) == strip(text2)
