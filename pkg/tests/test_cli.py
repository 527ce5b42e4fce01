import json

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from app.cli import EXIT_INVALID_INPUT, EXIT_NUMERICAL_FAILURE, main
from app.services.exporter import FRAME_COLUMNS, SPLINE_COLUMNS
from app.services.rod_io import RodSerializer


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


@pytest.fixture
def arc_rod(runner, tmp_path):
    path = tmp_path / "arc.json"
    result = runner.invoke(
        main,
        ["discretize", "--curve", "arc", "--params", "R=1,L=3.141592653589793",
         "--twist", "linear", "--n", "8", "--out", str(path)],
    )
    assert result.exit_code == 0, result.output
    return path


def test_discretize_writes_rod(arc_rod):
    framed, L = RodSerializer.load(arc_rod)
    assert framed.N == 8
    assert L == pytest.approx(np.pi)
    np.testing.assert_allclose(framed.angles, np.pi / 16 * np.arange(1, 16, 2), atol=1e-10)


def test_energy_prints_report(runner, arc_rod):
    result = runner.invoke(main, ["energy", "--rod", str(arc_rod)])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert set(report) == {"N", "lambda", "max_edge", "bend", "tor", "pen", "total"}
    assert report["N"] == 8
    assert report["total"] == pytest.approx(report["bend"] + report["tor"] + report["pen"])


def test_energy_hard_penalty_prints_infinity(runner, tmp_path):
    path = tmp_path / "rod.txt"
    path.write_text("0 0 0\n1 0 0\n2 0 0\n")
    result = runner.invoke(main, ["energy", "--rod", str(path), "--L", "1.0", "--hard"])
    assert result.exit_code == 0, result.output
    assert json.loads(result.stdout)["pen"] == float("inf")


def test_frames_and_spline_export(runner, arc_rod, tmp_path):
    frames_csv = tmp_path / "frames.csv"
    result = runner.invoke(main, ["frames", "--rod", str(arc_rod), "--steps", "4", "--out", str(frames_csv)])
    assert result.exit_code == 0, result.output
    table = pd.read_csv(frames_csv)
    assert list(table.columns) == FRAME_COLUMNS
    assert len(table) == 9 * 4 + 1

    spline_csv = tmp_path / "spline.csv"
    result = runner.invoke(main, ["spline", "--rod", str(arc_rod), "--samples", "11", "--out", str(spline_csv)])
    assert result.exit_code == 0, result.output
    table = pd.read_csv(spline_csv)
    assert list(table.columns) == SPLINE_COLUMNS
    assert table["t"].iloc[-1] == pytest.approx(np.pi)


def test_converge_to_stdout(runner):
    result = runner.invoke(
        main, ["converge", "--curve", "line", "--params", "L=1", "--twist", "linear", "--n-list", "8,4"]
    )
    assert result.exit_code == 0, result.output
    lines = result.stdout.strip().splitlines()
    assert lines[0].startswith("N,r_N,lambda,bend,tor,pen,total,bend_err,tor_err")
    assert [line.split(",")[0] for line in lines[1:]] == ["4", "8"]


def test_counterexample_command(runner):
    result = runner.invoke(main, ["counterexample", "--n", "6"])
    assert result.exit_code == 0, result.output
    report = json.loads(result.stdout)
    assert report["energy"]["bend"] == pytest.approx(2.0)
    assert report["y_at_2"] == pytest.approx([1.875, 0.125, 0.0])


def test_frame_study_to_file(runner, tmp_path):
    out = tmp_path / "study.csv"
    result = runner.invoke(
        main, ["frame-study", "--curve", "line", "--params", "L=1", "--n-list", "4,8", "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    table = pd.read_csv(out)
    assert list(table.columns) == ["N", "frame_dist"]
    assert (table["frame_dist"] < 1e-10).all()


@pytest.mark.parametrize(
    "args",
    [
        ["discretize", "--curve", "arc", "--params", "R=1", "--n", "8", "--out", "x.json"],
        ["discretize", "--curve", "arc", "--params", "R=-1,L=1", "--n", "8", "--out", "x.json"],
        ["converge", "--curve", "line", "--params", "L=1", "--n-list", "4,a"],
        ["converge", "--curve", "line", "--params", "L=1", "--n-list", "4", "--alpha", "3"],
        ["counterexample", "--n", "2"],
    ],
)
def test_invalid_input_exit_code(runner, tmp_path, args):
    with runner.isolated_filesystem(temp_dir=tmp_path):
        result = runner.invoke(main, args)
    assert result.exit_code == EXIT_INVALID_INPUT


def test_energy_without_length_is_invalid(runner, tmp_path):
    path = tmp_path / "rod.txt"
    path.write_text("0 0 0\n1 0 0\n")
    result = runner.invoke(main, ["energy", "--rod", str(path)])
    assert result.exit_code == EXIT_INVALID_INPUT


def test_numerical_failure_exit_code(runner, tmp_path):
    result = runner.invoke(main, ["discretize", "--curve", "arc", "--params", "R=1,L=3", "--n", "1",
                                  "--out", str(tmp_path / "x.json")])
    assert result.exit_code == EXIT_NUMERICAL_FAILURE


def test_frames_with_zero_steps_is_invalid(runner, arc_rod, tmp_path):
    out = tmp_path / "frames.csv"
    result = runner.invoke(main, ["frames", "--rod", str(arc_rod), "--steps", "0", "--out", str(out)])
    assert result.exit_code == EXIT_INVALID_INPUT
    assert not out.exists()
