"""Report schema, seeded determinism, and CLI dispatch with exit codes."""

import json

import pytest

from qgerbe.cli import run_command
from qgerbe.report import Report, validate_report


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_report_schema_accepts_and_rejects():
    rep = Report("verify", algebra="suq2", inputs={"lhs": "a"}, seed=0)
    rep.add("check", "holds")
    validate_report(rep.to_dict())
    bad = rep.to_dict()
    bad["results"][0]["status"] = "maybe"
    with pytest.raises(Exception):
        validate_report(bad)


def test_verify_holds_exit_zero(capsys):
    code, out = run(capsys, "verify", "--alg", "s2q",
                    "--lhs", "L L' + q^2 K^2", "--rhs", "1")
    assert code == 0
    doc = json.loads(out)
    validate_report(doc)
    assert doc["results"][0]["status"] == "holds"


def test_verify_fails_exit_one(capsys):
    code, out = run(capsys, "verify", "--alg", "suq2",
                    "--lhs", "a b", "--rhs", "b a")
    assert code == 1
    doc = json.loads(out)
    assert doc["results"][0]["status"] == "fails"
    assert doc["results"][0]["witness"]


def test_usage_error_exit_two(capsys):
    code, _ = run(capsys, "verify", "--alg", "suq2",
                  "--lhs", "a $", "--rhs", "1")
    assert code == 2


def test_normalize_and_text_mode(capsys):
    code, out = run(capsys, "normalize", "--alg", "suq2",
                    "--expr", "d a", "--text")
    assert code == 0
    assert "q^-1 b c + 1" in out


def test_hopf_commands(capsys):
    code, out = run(capsys, "hopf", "delta", "--alg", "suq2", "--expr", "a")
    assert code == 0
    assert "(x)" in json.loads(out)["results"][0]["witness"]
    code, out = run(capsys, "hopf", "axioms", "--alg", "suq2",
                    "--samples", "2", "--seed", "7")
    assert code == 0


def test_detq_and_presets(capsys):
    code, out = run(capsys, "detq", "--alg", "mq:2")
    assert code == 0
    doc = json.loads(out)
    assert any("g11 g22" in (r["witness"] or "") for r in doc["results"])
    code, out = run(capsys, "presets")
    assert code == 0
    assert len(json.loads(out)["results"]) == 6


def test_gerbe_commands(capsys):
    for argv in (["gerbe", "x"], ["gerbe", "projection"], ["gerbe", "loop"],
                 ["gerbe", "resolvent"], ["gerbe", "transition"]):
        code, out = run(capsys, *argv)
        assert code == 0, argv
        validate_report(json.loads(out))
    code, out = run(capsys, "gerbe", "xext", "--deformed")
    assert code == 0
    assert all(r["status"] == "indeterminate"
               for r in json.loads(out)["results"])
    # undeformed x^2 = x genuinely fails
    code, out = run(capsys, "gerbe", "xext")
    assert code == 1


def test_classical_commands(capsys):
    code, out = run(capsys, "classical", "dirac", "--g", "diag(i,-i)",
                    "--window", "0", "6.3")
    assert code == 0
    assert "1.5707963268" in json.loads(out)["results"][0]["witness"]
    code, out = run(capsys, "classical", "log", "--g", "diag(i,-i)",
                    "--cuts", "0.3")
    assert code == 0
    code, out = run(capsys, "classical", "cocycle", "--g", "diag(i,-i)",
                    "--cuts", "0.3", "2.0", "4.0", "--grid", "8")
    assert code == 0
    code, out = run(capsys, "classical", "match", "--g", "diag(i,-i)",
                    "--cuts", "0.1", "3.0")
    assert code == 0
    code, out = run(capsys, "classical", "loop")
    assert code == 0
    code, _ = run(capsys, "classical", "log", "--g", "diag(i,-i)")
    assert code == 2  # missing --cuts


def test_seeded_reports_are_byte_identical(capsys):
    outs = []
    for _ in range(2):
        code, out = run(capsys, "hopf", "axioms", "--alg", "suq2",
                        "--samples", "3", "--seed", "42")
        assert code == 0
        doc = json.loads(out)
        doc.pop("timing_ms")
        outs.append(json.dumps(doc, sort_keys=True))
    assert outs[0] == outs[1]
