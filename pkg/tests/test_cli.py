import json
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from hfkit import cli, folang as fl, model as md, proofkit as pk

CORPUS = Path(__file__).parent.parent / "corpus"


def call(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_set_vbar(capsys):
    assert call(capsys, "set", "vbar 16") == (0, "65535\n", "")


@pytest.mark.parametrize("expr,want", [
    ("mem 0 1", "true"), ("powerset 3", "15"), ("powerset 15", "65535"), ("on 3", "11"), ("k 2", "8"),
    ("members 11", "0 1 3"), ("level_size 4", "16"),
])
def test_set_operations(capsys, expr, want):
    code, out, _ = call(capsys, "set", expr)
    assert code == 0 and out.strip() == want


def test_set_overflow_exits_2(capsys):
    code, out, _ = call(capsys, "--budget-bits", "64", "set", "k 7")
    assert code == 2 and out.strip() == "overflow"


def test_model_dump(capsys):
    code, out, _ = call(capsys, "model", "2", "1")
    assert code == 0
    assert "domain 0: 0,1,2,3" in out and "(16 elements)" in out
    m = md.parse_dump(out)
    assert m.sizes == (4, 16)


def test_audit_corpus_proof(capsys):
    code, out, _ = call(capsys, "audit", str(CORPUS / "nmb2_pair.prf"))
    assert code == 0
    assert out.strip().endswith("verdict: CertifiedConsistentFragment")


def test_audit_structured_output_round_trips(capsys):
    code, out, _ = call(capsys, "--format", "structured", "audit", str(CORPUS / "nmb2_pair.prf"))
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "CertifiedConsistentFragment"
    assert data["model_sizes"] == [4, 16] and data["n"] == 2
    again = call(capsys, "--format", "structured", "audit", str(CORPUS / "nmb2_pair.prf"))[1]
    assert again == out


def test_check_rejects_and_audit_reports_failure(tmp_path, capsys):
    bad = tmp_path / "bad.prf"
    bad.write_text("theory H<w\n1. exists x . x in x ; axiom Sep\n")
    code, out, _ = call(capsys, "check", str(bad))
    assert code == 1 and "rejected at line 1" in out
    code, out, _ = call(capsys, "audit", str(bad))
    assert code == 1 and "CheckFailed(line 1)" in out


def test_audit_resource_limit_exits_2(capsys):
    code, out, _ = call(capsys, "--budget-bits", "1024", "audit", str(CORPUS / "nmb3_comp.prf"))
    assert code == 2 and "ResourceExceeded" in out


def test_parse_errors_exit_3(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("forall x . x = \n")
    code, out, err = call(capsys, "classify", str(f))
    assert code == 3 and out == "" and "formula" in err
    p = tmp_path / "p.prf"
    p.write_text("1. x = x ; logic EqRefl\n")
    assert call(capsys, "check", str(p))[0] == 3
    assert call(capsys, "set", "nosuchop 1")[0] == 3
    with pytest.raises(SystemExit) as e:
        cli.main(["no-such-command"])
    assert e.value.code == 3


def test_budget_below_64_is_rejected(capsys):
    code, _, err = call(capsys, "--budget-bits", "32", "set", "vbar 1")
    assert code == 3 and "64" in err


def test_budget_from_environment(monkeypatch, capsys):
    monkeypatch.setenv("HFKIT_BUDGET_BITS", "64")
    assert call(capsys, "set", "k 7")[0] == 2
    monkeypatch.setenv("HFKIT_BUDGET_BITS", "lots")
    assert call(capsys, "set", "k 1")[0] == 3


def test_classify_and_translate(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("forall z in V(x). z in y\n")
    code, out, _ = call(capsys, "classify", str(f))
    assert code == 0 and out.strip() == fl.FormulaClass.DELTA0_SET_V.value
    g = tmp_path / "g.txt"
    g.write_text("x = y\n")
    code, out, _ = call(capsys, "translate", "--via", "SUM", str(g))
    assert code == 0
    assert fl.parse(out) == fl.parse("(exists z <= y_1 . y_1 = x_1 + z and x_2 = y_2 + z) or "
                                     "(exists z <= y_2 . y_2 = x_2 + z and x_1 = y_1 + z)")
    assert call(capsys, "translate", "--via", "ON", str(tmp_path / "f.txt"))[0] == 1


def test_eval_against_a_dump(tmp_path, capsys):
    d = tmp_path / "v3.dump"
    d.write_text(md.dump(md.build_hf_model(2, 0)))
    assert call(capsys, "eval", str(d), "exists x . exists y . x in y")[:2] == (0, "true\n")
    assert call(capsys, "eval", str(d), "exists x . x in x")[:2] == (1, "false\n")
    assert call(capsys, "eval", str(d), "x in y")[0] == 1
    (tmp_path / "bad.dump").write_text("sorts 0\n")
    assert call(capsys, "eval", str(tmp_path / "bad.dump"), "0 = 0")[0] == 3


def test_encode_decode_round_trip(tmp_path, capsys):
    src = CORPUS / "refl_gen.prf"
    code, out, _ = call(capsys, "encode", str(src))
    assert code == 0 and int(out) == pk.godel_encode(pk.parse_proof(src.read_text()))
    c = tmp_path / "code.txt"
    c.write_text(out)
    code, text, _ = call(capsys, "decode", str(c))
    assert code == 0 and pk.parse_proof(text) == pk.parse_proof(src.read_text())
    f = tmp_path / "f.txt"
    f.write_text("forall x . x = x\n")
    c.write_text(call(capsys, "encode", str(f))[1])
    assert call(capsys, "decode", str(c))[1].strip() == "forall x . x = x"
    c.write_text("12345\n")
    assert call(capsys, "decode", str(c))[0] == 3


def test_structured_output_is_json_for_every_command(tmp_path, capsys):
    f = tmp_path / "f.txt"
    f.write_text("x = x\n")
    for argv in (["set", "vbar 16"], ["model", "1", "1"], ["classify", str(f)],
                 ["check", str(CORPUS / "refl_gen.prf")], ["encode", str(f)]):
        code, out, _ = call(capsys, "--format", "structured", *argv)
        assert code == 0
        json.loads(out)


@pytest.mark.skipif(shutil.which("hfkit") is None, reason="console script not on PATH")
def test_console_script():
    r = subprocess.run(["hfkit", "set", "vbar 16"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout == "65535\n"
    r = subprocess.run([sys.executable, "-m", "hfkit.cli", "model", "0", "1"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.startswith("sorts 1")
