"""Command-line behavior: subcommands, formats, exit codes."""
import json

import pytest

from twistcong.cli import main
from twistcong.dataset import load_bundled_dataset, serialize_dataset


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_bundled_pass(capsys):
    code, out, _ = run(capsys, "verify", "--dataset", "37a1-septic-577")
    assert code == 0
    assert "S(1) = -16184/577, v_7 = 1" in out
    assert out.rstrip().endswith("verdict: PASS")


def test_verify_structured(capsys):
    code, out, _ = run(capsys, "verify", "--dataset", "21a1-quintic-19",
                       "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    assert doc["report_version"] == 1
    assert doc["verdict"] == "PASS"
    assert doc["characters"]["ind:1"]["min_poly"] == ["256", "-48", "1"]


def test_verify_from_file(tmp_path, capsys):
    ds = load_bundled_dataset("37a1-septic-577")
    path = tmp_path / "copy.json"
    path.write_text(json.dumps(serialize_dataset(ds)))
    code, out, _ = run(capsys, "verify", "--dataset", str(path))
    assert code == 0 and "verdict: PASS" in out


def test_verify_stricter_modulus_fails(capsys):
    code, out, _ = run(capsys, "verify", "--dataset", "21a1-quintic-19",
                       "--n-override", "2")
    assert code == 1
    assert "verdict: FAIL" in out


def test_verify_weak_bound_inconclusive(capsys):
    code, out, _ = run(capsys, "verify", "--dataset", "21a1-quintic-19",
                       "--den-bound", "1")
    assert code == 2
    assert "verdict: INCONCLUSIVE" in out


def test_verify_missing_dataset(capsys):
    code, _, err = run(capsys, "verify", "--dataset", "no-such-dataset")
    assert code == 3
    assert "no such file" in err


def test_verify_route_without_data(capsys):
    code, _, err = run(capsys, "verify", "--dataset", "37a1-septic-577",
                       "--route", "direct")
    assert code == 3
    assert "untruncated" in err


def test_usage_errors_exit_3(capsys):
    with pytest.raises(SystemExit) as e:
        main(["verify"])                     # --dataset is required
    assert e.value.code == 3
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])                 # unknown subcommand
    assert e.value.code == 3


def test_gz_route_from_cli(capsys):
    code, out, _ = run(capsys, "verify", "--dataset", "21a1-quintic-19",
                       "--route", "gz")
    assert code == 0
    assert "S(1) = -1060/361, v_5 = 1" in out


def test_verify_out_file(tmp_path, capsys):
    target = tmp_path / "report.txt"
    code, out, _ = run(capsys, "verify", "--dataset", "37a1-septic-577",
                       "--out", str(target))
    assert code == 0
    assert out == ""
    text = target.read_text()
    assert "S(1) = -16184/577, v_7 = 1" in text
    assert text.rstrip().endswith("verdict: PASS")


def test_verify_out_structured(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(capsys, "verify", "--dataset", "21a1-quintic-19",
                       "--format", "structured", "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["verdict"] == "PASS"


def test_out_path_unwritable(tmp_path, capsys):
    target = tmp_path / "missing-dir" / "report.txt"
    code, _, err = run(capsys, "verify", "--dataset", "37a1-septic-577",
                       "--out", str(target))
    assert code == 3
    assert "missing-dir" in err


def test_bsd_squares_dataset(capsys):
    code, out, _ = run(capsys, "bsd-squares", "--dataset", "21a1-quintic-19")
    assert code == 0
    assert "Sha(K) = 1" in out
    assert "Sha(L) = 4" in out
    assert "Sha(F) = 32   (not a square)" in out


def test_bsd_squares_out_file(tmp_path, capsys):
    target = tmp_path / "sha.txt"
    code, out, _ = run(capsys, "bsd-squares", "--dataset", "21a1-quintic-19",
                       "--out", str(target))
    assert code == 0 and out == ""
    assert "Sha(F) = 32   (not a square)" in target.read_text()


def test_bsd_squares_structured(capsys):
    code, out, _ = run(capsys, "bsd-squares", "--dataset", "37a1-septic-577",
                       "--format", "structured")
    assert code == 0
    doc = json.loads(out)
    rows = {r["field"]: r for r in doc["sha_predictions"]}
    assert rows["k"]["sha"] == "1" and rows["k"]["square"]
    assert rows["K"]["integral"]


def test_bsd_squares_random(capsys):
    code, out, _ = run(capsys, "bsd-squares", "--random", "50", "--seed", "3")
    assert code == 0
    assert "50 instances, 0 inconsistent, 0 planted violations missed" in out


def test_bsd_squares_needs_a_mode(capsys):
    code, _, err = run(capsys, "bsd-squares")
    assert code == 3
    assert "--dataset or --random" in err


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0
    assert "all selftest checks passed" in out
    lines = [l for l in out.splitlines() if l and not l.startswith("all ")]
    assert lines and all(l.startswith("ok  ") for l in lines)
