import csv
import io
import json
import math
from pathlib import Path

import numpy as np
import pytest

from ritzbounds import cli, matio
from ritzbounds.harness import worked_example

FIXTURES = Path(__file__).parent / "fixtures"


def run_cli(capsys, *args):
    code = cli.main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_subcommand(capsys, tmp_path):
    out_path = tmp_path / "report.json"
    code, out, _ = run_cli(
        capsys, "verify", "--d", "6", "--k", "2", "--trials", "8", "--seed", "5",
        "--mode", "invariant_plus_perturbation", "--eps", "0.05",
        "--threads", "1", "--json", str(out_path),
    )
    assert code == 0
    assert "failures 0" in out
    doc = json.loads(out_path.read_text())
    assert doc["instances"] == 8
    assert doc["failures"] == 0
    for entry in doc["theorems"].values():
        total = entry["passes"] + entry["failures"] + sum(entry["skips"].values())
        assert total == 8


def test_verify_random_mode(capsys):
    code, out, _ = run_cli(capsys, "verify", "--d", "5", "--k", "2", "--trials", "5",
                           "--seed", "1", "--threads", "1")
    assert code == 0
    assert "mixed_cos" in out


def test_example_subcommand(capsys):
    code, out, _ = run_cli(capsys, "example", "--name", "exa2",
                           "--theta", str(math.pi / 6))
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["delta"] - 0.5) <= 1e-10
    assert abs(doc["delta_prime"] - 1.5) <= 1e-10
    assert abs(doc["classical_ratio"] - math.sqrt(3.0)) <= 1e-10
    assert abs(doc["improved_ratio"] - 1.0 / math.sqrt(3.0)) <= 1e-10

    code, out, _ = run_cli(capsys, "example", "--name", "exa1", "--theta", "0.7")
    assert code == 0
    doc = json.loads(out)
    assert abs(doc["cos_margin"]) <= 1e-10


def test_example_rejects_bad_arguments(capsys):
    code, _, err = run_cli(capsys, "example", "--name", "exa1", "--theta", "2.0")
    assert code == 2
    assert "error" in err
    code, _, err = run_cli(capsys, "example", "--name", "exa1", "--theta", "0.5",
                           "--params", "3,2,1,0")
    assert code == 2


def test_sweep_subcommand_csv(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--name", "exa2",
                           "--grid", "0.2,0.4,0.6")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    for row in rows:
        th = float(row["theta"])
        assert abs(float(row["improved_ratio"]) - math.tan(th)) <= 1e-9


def test_sweep_rotated_family_csv_is_scalar(capsys):
    code, out, _ = run_cli(capsys, "sweep", "--name", "exa1", "--grid", "0.3,0.9")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    for row in rows:
        th = float(row["theta"])
        assert abs(float(row["lhs_1"]) - math.sin(th) ** 2) <= 1e-10
        assert abs(float(row["cos_margin"])) <= 1e-10


def test_sweep_subcommand_json_linspace(capsys, tmp_path):
    out_path = tmp_path / "sweep.json"
    code, _, _ = run_cli(capsys, "sweep", "--name", "exa1", "--grid", "0.1:1.0:4",
                         "--format", "json", "--out", str(out_path))
    assert code == 0
    rows = json.loads(out_path.read_text())
    assert len(rows) == 4
    assert all(abs(r["tan_margin"]) <= 1e-10 for r in rows)


def test_sweep_invalid_grid(capsys):
    code, _, err = run_cli(capsys, "sweep", "--name", "exa1", "--grid", "0.0,0.5")
    assert code == 2
    assert "error" in err


def test_check_file_subcommand(capsys, tmp_path):
    A, X, Y = worked_example("exa1", 0, 1, 2, 3, math.pi / 3)
    pa, px, py = (tmp_path / n for n in ("A.json", "X.json", "Y.json"))
    matio.save_matrix(pa, A)
    matio.save_matrix(px, X)
    matio.save_matrix(py, Y)
    code, out, _ = run_cli(capsys, "check-file", "--matrix", str(pa),
                           "--x", str(px), "--y", str(py))
    assert code == 0
    assert "mixed_cos: pass" in out
    assert "skipped" in out  # the separated-family bounds do not apply here


def test_check_file_fixture(capsys):
    code, out, _ = run_cli(
        capsys, "check-file",
        "--matrix", str(FIXTURES / "exa1_A.json"),
        "--x", str(FIXTURES / "exa1_X.json"),
        "--y", str(FIXTURES / "exa1_Y_pi3.json"),
    )
    assert code == 0


def test_check_file_rejects_bad_inputs(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{oops")
    code, _, err = run_cli(capsys, "check-file", "--matrix", str(p),
                           "--x", str(p), "--y", str(p))
    assert code == 2
    assert "error" in err
    # non-Hermitian square matrix
    M = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    pm = tmp_path / "m.json"
    matio.save_matrix(pm, M)
    px = tmp_path / "x.json"
    matio.save_matrix(px, np.eye(2, 1, dtype=complex))
    code, _, err = run_cli(capsys, "check-file", "--matrix", str(pm),
                           "--x", str(px), "--y", str(px))
    assert code == 2
    assert "Hermitian" in err
    # missing file
    code, _, err = run_cli(capsys, "check-file", "--matrix", str(tmp_path / "no.json"),
                           "--x", str(px), "--y", str(px))
    assert code == 2
