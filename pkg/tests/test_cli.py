import json
import subprocess
import sys

import numpy as np
import pytest

from complexon.cli import main
from complexon.spectral import parse_matrix


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "tri.txt"
    path.write_text("n 3\n1 2 3\n")
    return path


def test_raise(triangle_file, capsys):
    assert main(["raise", str(triangle_file), "--dim", "2"]) == 0
    M = parse_matrix(capsys.readouterr().out)
    assert np.array_equal(M.matrix, (np.ones((3, 3)) - np.eye(3)) / 3)


def test_raise_unordered_to_file(tmp_path):
    K = tmp_path / "tet.txt"
    K.write_text("n 4\n1 2 3 4\n")
    out = tmp_path / "m.txt"
    assert main(["raise", str(K), "--dim", "3", "--unordered", "--out", str(out)]) == 0
    assert parse_matrix(out.read_text()).matrix[0, 1] == 1 / 16


def test_spectrum(triangle_file, capsys):
    assert main(["spectrum", str(triangle_file)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "3 2"
    assert lines[1].startswith("1 0.2222")


def test_density_complex(triangle_file, capsys):
    assert main(["density", str(triangle_file), "--K", str(triangle_file)]) == 0
    value, count = capsys.readouterr().out.split()
    assert float(value) == 6 / 27 and count == "6"


def test_density_complexon(triangle_file, capsys):
    args = ["density", str(triangle_file), "--W", "paper-example", "--estimator", "monte-carlo", "--samples", "50000"]
    assert main(args) == 0
    value, stderr = map(float, capsys.readouterr().out.split())
    assert abs(value - 0.5) < 4 * stderr


def test_density_needs_one_target(triangle_file, capsys):
    assert main(["density", str(triangle_file)]) == 2
    assert "exactly one" in capsys.readouterr().err


def test_sample(tmp_path):
    out = tmp_path / "k.txt"
    assert main(["sample", "--n", "10", "--seed", "3", "--out", str(out)]) == 0
    assert out.read_text().startswith("n 10\n")
    latent = (tmp_path / "k.txt.latent").read_text().splitlines()
    assert len(latent) == 10 and latent[0].startswith("1 ")
    again = tmp_path / "k2.txt"
    main(["sample", "--n", "10", "--seed", "3", "--out", str(again), "--latent", str(tmp_path / "l")])
    assert again.read_text() == out.read_text()


def test_sample_too_few_nodes(tmp_path, capsys):
    assert main(["sample", "--n", "2", "--out", str(tmp_path / "k")]) == 2
    assert "error" in capsys.readouterr().err


def test_converge(tmp_path, capsys):
    csv_path, svg_path = tmp_path / "r.csv", tmp_path / "r.svg"
    args = ["converge", "--n-min", "6", "--n-max", "8", "--trials", "2", "--indices", "1,-1"]
    assert main(args + ["--out-csv", str(csv_path), "--out-svg", str(svg_path)]) == 0
    assert len(csv_path.read_text().splitlines()) == 7
    assert (tmp_path / "r_summary.csv").exists()
    assert svg_path.read_text().startswith("<svg")
    out = capsys.readouterr().out
    assert "n=8 trials=2" in out and "lambda_-1" in out


def test_converge_config_with_override(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n_min": 5, "n_max": 6, "trials": 1, "indices": [1]}))
    summary = tmp_path / "s.csv"
    assert main(["converge", "--config", str(cfg), "--n-max", "7", "--summary-csv", str(summary)]) == 0
    assert [line.split(",")[0] for line in summary.read_text().splitlines()[1:]] == ["5", "6", "7"]


@pytest.mark.parametrize(
    "args",
    [
        ["converge", "--n-min", "2", "--n-max", "5"],
        ["converge", "--n-min", "5", "--n-max", "5", "--out-csv", "/nonexistent/dir/r.csv"],
        ["converge", "--n-min", "5", "--n-max", "5", "--complexon", "missing.json"],
        ["spectrum", "/nonexistent.txt"],
    ],
)
def test_errors(args, capsys):
    assert main(args) == 2
    assert "error" in capsys.readouterr().err


def test_bad_indices():
    with pytest.raises(SystemExit):
        main(["converge", "--indices", "1,x"])


def test_module_entry_point(triangle_file):
    proc = subprocess.run(
        [sys.executable, "-m", "complexon", "spectrum", str(triangle_file), "--dim", "1"],
        capture_output=True,
        text=True,
        check=True,
    )
    assert proc.stdout.splitlines()[0] == "3 1"
