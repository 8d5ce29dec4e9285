import io
import json
import subprocess
import sys

import pytest

from rsquant.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_info():
    code, text = run("info", "--type", "G2")
    assert code == 0 and "finite type: True" in text


def test_dim_and_gram():
    assert run("dim", "2,1") == (0, "2\n")
    code, text = run("gram", "1,1")
    assert code == 0 and "determinant:" in text and "e1*e2" in text


def test_straighten_reduce_pair():
    code, text = run("straighten", "e1*f1")
    assert code == 0 and "f1*e1" in text and "w1" in text and "wp1" in text
    code, text = run("straighten", "--strategy", "rightmost", "e1*f2")
    assert text == "f2*e1\n"
    assert run("reduce", "e1*e1*e2 - (r+s)*e1*e2*e1 + r*s*e2*e1*e1") == (0, "0\n")
    code, text = run("pair", "f1*f2", "e1*e2")
    assert code == 0 and text.strip()


def test_skew_derivations():
    assert run("del", "1", "e2*e1") == (0, "s^-1*e2\n")
    assert run("delp", "1", "e2*e1") == (0, "r^-1*e2\n")


def test_custom_matrix():
    code, text = run("dim", "--matrix", "2 -1; -1 2", "1,1")
    assert (code, text) == (0, "2\n")
    assert run("dim", "--matrix", "2 -1; 0 2", "1,1")[0] == 2
    assert run("dim", "--symmetrizers", "1,1", "1,1")[0] == 2


@pytest.mark.parametrize("argv", [
    ("verify", "relations", "--max-height", "99"),
    ("straighten", "e3"),
    ("dim", "1"),
    ("dim", "x,y"),
    ("info", "--type", "Q9"),
    ("del", "1", "f1"),
    ("pair", "e1", "e1"),
    ("nonsense",),
])
def test_usage_errors_exit_2(argv, capsys):
    assert run(*argv)[0] == 2
    if argv[0] != "nonsense":
        assert "error:" in capsys.readouterr().err


def test_height_message(capsys):
    run("verify", "relations", "--type", "A2", "--max-height", "99")
    assert "height bound exceeds maximum" in capsys.readouterr().err


def test_verify_cocycle_report(tmp_path):
    out = tmp_path / "rep.json"
    code, text = run("verify", "cocycle", "--type", "B2", "--case", "II", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["summary"]["fail"] == 0
    plus = [c for c in doc["cases"] if c["case_id"].startswith("cocycle case II plus")]
    assert sorted((c["inputs"]["i"], c["inputs"]["j"]) for c in plus) == [(1, 2), (2, 1)]


def test_reports_byte_identical(tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run("verify", "pairing", "--mode", "specialize", "--seed", "4", "--out", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()
    run("verify", "pairing", "--timings", "--out", str(paths[0]))
    assert "wall_time" in paths[0].read_text()


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "rsquant", "dim", "1,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "2\n"
    proc = subprocess.run([sys.executable, "-m", "rsquant", "dim", "9,9", "--max-height", "3"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and proc.stderr.startswith("error:")
