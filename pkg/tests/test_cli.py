from __future__ import annotations

import json
from pathlib import Path

import pytest

from holant3.cli import main
from holant3.holant import BRUTE_CAP_ENV

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out.strip(), out.err.strip()


def test_classify_planar(capsys):
    code, out, _ = run(capsys, "classify", 1, 0, -1, 2)
    assert code == 0
    assert out.splitlines()[0] == "#P-hard; planar P-time (a=1/2, b=-1/2)"
    assert "classify [1, 0, -1, 2]" in out


def test_classify_degenerate(capsys):
    code, out, _ = run(capsys, "classify", 1, -1, 1, -1)
    assert code == 0 and out.startswith("P-time (degenerate")


def test_classify_rejects_float(capsys):
    code, _, err = run(capsys, "classify", 1, "0.5", 1, 1)
    assert code == 2 and "p/q" in err


def test_cover_triple(capsys):
    assert run(capsys, "cover", FIXTURES / "triple.json")[:2] == (0, "6")


def test_cover_planar(capsys):
    code, out, _ = run(capsys, "cover", "--planar", "--check", FIXTURES / "planar-q3.json")
    assert (code, out) == (0, "9")


def test_gadget_gaux(capsys):
    assert run(capsys, "gadget", "Gaux", 1, 2, 3, 4)[:2] == (0, "[44, 62, 88, 126]")


def test_gadget_matrix(capsys):
    assert run(capsys, "gadget", "G3", 1, -1, 0, 2)[:2] == (0, "[[1, 1], [-1, 4]]")


def test_gadget_unknown(capsys):
    assert run(capsys, "gadget", "G9", 1, 2, 3, 4)[0] == 2


def test_eval_methods(capsys):
    f = FIXTURES / "k33-leafless.json"
    for method in ("auto", "brute", "dp"):
        assert run(capsys, "eval", f, "--method", method)[:2] == (0, "6")


def test_eval_cap(capsys, monkeypatch):
    monkeypatch.setenv(BRUTE_CAP_ENV, "4")
    code, _, err = run(capsys, "eval", FIXTURES / "k33-leafless.json", "--method", "brute")
    assert code == 2 and BRUTE_CAP_ENV in err


def test_eval_schema_error(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"version": 2, "kind": "grid"}')
    assert run(capsys, "eval", p)[0] == 2
    assert run(capsys, "eval", tmp_path / "missing.json")[0] == 2


def test_planar_command(capsys):
    assert run(capsys, "planar", FIXTURES / "planar-q3.json", "1/2", "-1/2")[:2] == (0, "9")


def test_interp(capsys):
    code, out, _ = run(capsys, "interp", "slots-1")
    assert code == 0 and "agree" in out


def test_falsify_prints_seed(capsys):
    code, out, _ = run(capsys, "falsify", "R&S", "--samples", 100, "--seed", 4)
    assert code == 0 and out.startswith("seed 4, 100 samples")


def test_falsify_unknown(capsys):
    assert run(capsys, "falsify", "XYZ")[0] == 2


def test_verify_solutions(capsys):
    code, out, _ = run(capsys, "verify", "solutions")
    assert code == 0 and "FAIL" not in out


def test_verify_gadgets_reports_known_failures(capsys):
    code, out, _ = run(capsys, "verify", "gadgets", "--quick")
    assert code == 1
    assert out.count("FAIL (known)") == 2


def test_json_report(capsys):
    code, out, _ = run(capsys, "--json", "gadget", "Gaux", 1, 2, 3, 4)
    rep = json.loads(out)
    assert code == 0 and rep["command"] == "gadget"
    assert rep["outputs"]["symmetric"] == ["44", "62", "88", "126"]
    assert set(rep) >= {"inputs_digest", "timing_s", "versions", "schema_version"}
    code2, out2, _ = run(capsys, "--json", "gadget", "Gaux", 1, 2, 3, 4)
    assert json.loads(out2)["inputs_digest"] == rep["inputs_digest"]


def test_json_report_file_digest(capsys):
    _, out, _ = run(capsys, "--json", "cover", FIXTURES / "triple.json")
    assert len(json.loads(out)["inputs"]["file_digest"]) == 16


def test_missing_subcommand():
    with pytest.raises(SystemExit) as e:
        main([])
    assert e.value.code == 2
