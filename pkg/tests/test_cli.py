import json
import subprocess
import sys

import pytest

from tangentfill.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_json(capsys):
    code, out, _ = run(capsys, "analyze", "--curve", "agt", "--q", "11", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["tangent_filling"] is True and report["points"] == 91


def test_analyze_text_and_depth(capsys):
    code, out, _ = run(capsys, "analyze", "--curve", "agt", "--q", "13", "--depth", "2")
    assert code == 0
    assert "singular_ext2: [[1, 1, 1]]" in out


@pytest.mark.parametrize("argv", [
    ["analyze", "--curve", "agt", "--q", "6"],
    ["analyze", "--curve", "hermitian", "--q", "7"],
    ["analyze", "--curve", "agt", "--q", "11", "--n", "2"],
    ["witness", "--q", "11", "--point", "0,0,0"],
    ["witness", "--q", "11", "--point", "1,2"],
    ["witness", "--q", "11", "--point", "1,x,2"],
    ["witness", "--q", "11", "--point", "1,2,11"],
    ["verify-paper", "--claims", "no-such-claim"],
])
def test_invalid_input_exit_code(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "invalid input" in err


def test_analyze_spec_file(capsys, tmp_path):
    path = tmp_path / "conic.json"
    path.write_text(json.dumps({"field": {"p": 4 // 2, "n": 2, "modulus": [1, 1, 1]},
                                "terms": [{"c": 1, "e": [2, 0, 0]}, {"c": 1, "e": [0, 1, 1]}]}))
    code, out, _ = run(capsys, "analyze", "--spec", str(path), "--json")
    assert code == 0 and json.loads(out)["tangent_filling"] is True
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run(capsys, "analyze", "--spec", str(bad))[0] == 2
    assert run(capsys, "analyze", "--spec", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "analyze", "--spec", str(path), "--q", "5")[0] == 2


def test_gallery_spec_feeds_analyze(capsys, tmp_path):
    code, out, _ = run(capsys, "gallery", "--curve", "hermitian", "--q", "9")
    assert code == 0
    path = tmp_path / "h.json"
    path.write_text(out)
    code, out, _ = run(capsys, "analyze", "--spec", str(path), "--json")
    assert json.loads(out)["points"] == 28
    code, out, _ = run(capsys, "gallery")
    assert code == 0 and "hermitian" in out


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "--q", "11", "--point", "0,1,10", "--json")
    data = json.loads(out)
    assert code == 0 and data["case"] == "C2.2" and data["witness"] == [1, 6, 6]
    code, out, _ = run(capsys, "witness", "--p", "13", "--point", "0,1,0")
    assert code == 0 and "C3-b3" in out


def test_witness_domain_error(capsys):
    code, _, err = run(capsys, "witness", "--q", "7", "--point", "1,1,1")
    assert code == 3 and "[1:1:1]" in err
    code, _, err = run(capsys, "witness", "--q", "9", "--point", "1,1,1")
    assert code == 3


def test_verify_selected(capsys):
    code, out, _ = run(capsys, "verify-paper", "--claims", "remark1.6")
    assert code == 0 and out.startswith("PASS rem1.6")
    code, out, _ = run(capsys, "verify-paper", "--claims", "prop3.2", "--q", "13", "--json")
    data = json.loads(out)
    assert code == 0 and data["claims"][0]["details"][0]["singular_ext2"] == [[1, 1, 1]]


def test_verify_skip_for_ineligible_order(capsys):
    code, out, _ = run(capsys, "verify-paper", "--claims", "hermitian", "--q", "13")
    assert code == 0 and out.startswith("SKIP hermitian")


def test_search_json_is_deterministic(capsys):
    argv = ["search", "--q", "17", "--dmax", "3", "--samples", "500", "--seed", "7", "--json"]
    code, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert code == 0 and first == second
    assert json.loads(first)["found"] is None


def test_search_exhaustive(capsys):
    code, out, _ = run(capsys, "search", "--q", "2", "--dmax", "4", "--exhaustive", "--json")
    data = json.loads(out)
    assert code == 0 and data["mode"] == "exhaustive" and data["degree"] == 2


def test_threads_do_not_change_output(capsys, monkeypatch):
    argv = ["verify-paper", "--claims", "rem1.6,hermitian,triangle,strange", "--json"]
    _, single, _ = run(capsys, *argv, "--threads", "1")
    _, multi, _ = run(capsys, *argv, "--threads", "4")
    assert single == multi


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tangentfill", "witness", "--q", "11",
                           "--point", "1,1,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and "C4" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "tangentfill", "analyze"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
