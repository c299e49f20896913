import json
import subprocess
import sys

import pytest

from cayley_machina.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def structured(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--format", "structured")
    return code, json.loads(out)


def test_analyze_examples(capsys):
    code, doc = structured(capsys, "analyze", "rightzero:2")
    assert code == 0
    assert doc["verdicts"]["dual"] == "infinite (R-related idempotent pair 0,1)"
    assert doc["verdicts"]["cayley"] == "finite"
    code, doc = structured(capsys, "analyze", "cyclic:2")
    assert doc["verdicts"] == {"cayley": "infinite (not H-trivial)", "dual": "infinite (not H-trivial)"}
    code, doc = structured(capsys, "analyze", "chain:2")
    assert doc["verdicts"] == {"cayley": "finite", "dual": "finite"}


def test_analyze_text(capsys):
    code, out, _ = run(capsys, "analyze", "chain:3")
    assert code == 0
    assert "C(S): finite" in out and "C*(S): finite" in out
    assert "ideal I:" in out and "egg-box:" in out


def test_closure_examples(capsys):
    code, doc = structured(capsys, "closure", "chain:2", "--dual")
    assert code == 0 and doc["verdict"] == "finite" and doc["size"] == 2
    code, doc = structured(capsys, "closure", "cyclic:2", "--budget-elements", "200")
    assert code == 0 and doc["verdict"] == "exhausted" and doc["elements_found"] == 200
    code, _, _ = run(capsys, "closure", "cyclic:2", "--expect-finite", "--budget-elements", "200")
    assert code == 2
    code, _, _ = run(capsys, "closure", "chain:2", "--dual", "--expect-finite")
    assert code == 0


def test_closure_text_contains_table(capsys):
    code, out, _ = run(capsys, "closure", "chain:2", "--dual")
    assert "verdict: finite size 2" in out
    assert "\n2\n0 0\n0 1\n" in out


def test_free_check_examples(capsys):
    code, doc = structured(capsys, "free-check", "cyclic:3", "--length", "4")
    assert doc["distinct_counts"] == [3, 9, 27, 81] and doc["is_free_up_to_L"]
    code, doc = structured(capsys, "free-check", "rightzero:2", "--dual", "--length", "5")
    assert doc["distinct_counts"] == [2, 4, 8, 16, 32]
    code, doc = structured(capsys, "free-check", "leftzero:2", "--length", "3")
    assert code == 0 and doc["distinct_counts"] == [2, 2, 2] and not doc["is_free_up_to_L"]
    code, _, _ = run(capsys, "free-check", "leftzero:2", "--length", "3", "--assert-free")
    assert code == 3
    code, _, _ = run(capsys, "free-check", "cyclic:2", "--length", "3", "--assert-free")
    assert code == 0


def test_sweep_examples(capsys, tmp_path):
    out = tmp_path / "sweep2.json"
    code, doc = structured(capsys, "sweep", "--order", "2", "--workers", "1", "--out", str(out))
    assert code == 0
    assert doc["counts"]["classes"] == 5 and doc["counts"]["mismatches"] == 0
    assert json.loads(out.read_text()) == doc
    tsv = out.with_suffix(".tsv").read_text().splitlines()
    assert len(tsv) == 6 and tsv[0].split("\t")[0] == "canonical_id"
    assert out.with_suffix(".png").read_bytes()[:4] == b"\x89PNG"
    code, _, err = run(capsys, "sweep", "--order", "5")
    assert code == 1 and "unsupported order" in err


def test_closure_out_writes_figure(capsys, tmp_path):
    out = tmp_path / "c.json"
    code, _, _ = run(capsys, "closure", "rightzero:2", "--dual", "--budget-elements", "100", "--out", str(out))
    assert code == 0
    assert json.loads(out.read_text())["verdict"] == "exhausted"
    assert out.with_suffix(".png").stat().st_size > 0


def test_product_and_file_sources(capsys, tmp_path):
    code, doc = structured(capsys, "closure", "chain:2*leftzero:2", "--dual")
    assert doc["size"] == 2
    p = tmp_path / "t.txt"
    p.write_text("# chain\n2\n0 0\n0 1\n")
    code, doc = structured(capsys, "analyze", str(p))
    assert code == 0 and doc["order"] == 2


def test_input_errors_exit_1(capsys, tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("2\n0 1\n0 0\n")
    assert run(capsys, "analyze", str(p))[0] == 1
    assert run(capsys, "analyze", "nosuch:3")[0] == 1
    assert run(capsys, "analyze", str(tmp_path / "missing.txt"))[0] == 1
    assert run(capsys, "closure", "chain:2", "--budget-elements", "0")[0] == 1
    assert run(capsys, "free-check", "cyclic:2", "--length", "0")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["closure", "chain:2", "--bogus"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["sweep"])
    assert exc.value.code == 1


def test_structured_output_is_deterministic():
    cmd = [sys.executable, "-m", "cayley_machina", "closure", "chain:3", "--dual", "--format", "structured"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["format"] == "cayley-machina/1"
