"""Command-line interface: subcommands, outputs, exit codes."""

import os

import numpy as np
import pytest

from fwmpair.cli import main


def test_presets_list(capsys):
    assert main(["presets", "list"]) == 0
    out = capsys.readouterr().out
    for name in ("fiberA-726", "fiberB-1064", "asymmetric-generic", "symmetric-generic"):
        assert name in out


def test_jta_point_run(tmp_path, capsys):
    out_dir = str(tmp_path / "jta")
    code = main([
        "jta", "--preset", "asymmetric-generic", "--tau", "5.7e-13",
        "--rate", "0.1", "--out", out_dir,
    ])
    assert code == 0
    stdout = capsys.readouterr().out
    assert "purity=" in stdout
    assert os.path.exists(os.path.join(out_dir, "analytic_jta.csv"))
    assert os.path.exists(os.path.join(out_dir, "run_metadata.ini"))
    assert os.path.exists(os.path.join(out_dir, "jta_magnitude.csv"))
    assert os.path.exists(os.path.join(out_dir, "jta.png"))


def test_no_plot_skips_figure(tmp_path):
    out_dir = str(tmp_path / "noplot")
    assert main([
        "jta", "--tau", "5.7e-13", "--rate", "0", "--out", out_dir, "--no-plot",
    ]) == 0
    assert not os.path.exists(os.path.join(out_dir, "jta.png"))
    assert os.path.exists(os.path.join(out_dir, "jta_magnitude.csv"))


def test_jsa_point_run(tmp_path):
    out_dir = str(tmp_path / "jsa")
    code = main([
        "jsa", "--preset", "fiberA-726", "--bandwidth-nm", "2.0",
        "--include-beta2", "--out", out_dir, "--no-plot",
    ])
    assert code == 0
    assert os.path.exists(os.path.join(out_dir, "jsa_magnitude.csv"))


def test_ssf_point_run(tmp_path, capsys):
    out_dir = str(tmp_path / "ssf")
    code = main([
        "ssf", "--preset", "asymmetric-generic", "--tau", "1.14e-12",
        "--rate", "0.05", "--out", out_dir, "--no-plot",
    ])
    assert code == 0
    assert "rate=" in capsys.readouterr().out


def test_sweep_run_and_config(tmp_path, capsys):
    config = tmp_path / "sweep.ini"
    out_dir = tmp_path / "sweepout"
    config.write_text(
        "[run]\nmodel = analytic_jta\npreset = asymmetric-generic\n"
        f"rates = 0, 0.1\nout = {out_dir}\n"
        "[pump]\ntau_s = 5.7e-13\n[grid]\nn = 256\n"
    )
    assert main(["sweep", "--config", str(config), "--no-plot"]) == 0
    table = (out_dir / "sweep.csv").read_text().splitlines()
    assert len(table) == 3  # header + 2 rows
    assert "purity" in table[0]
    # rerun from the exported metadata gives identical purities
    assert main(["sweep", "--config", str(out_dir / "run_metadata.ini"), "--no-plot"]) == 0
    table2 = (out_dir / "sweep.csv").read_text().splitlines()
    assert table2 == table


def test_sweep_with_figure(tmp_path):
    out_dir = str(tmp_path / "fig")
    assert main([
        "sweep", "--model", "analytic_jta", "--preset", "asymmetric-generic",
        "--tau", "5.7e-13", "--rates", "0,0.1", "--out", out_dir,
    ]) == 0
    assert os.path.exists(os.path.join(out_dir, "purity_vs_rate.png"))


def test_optimize_tau_command(tmp_path, capsys):
    out_dir = str(tmp_path / "opt")
    code = main([
        "optimize-tau", "--preset", "symmetric-generic", "--tau", "1.4e-12",
        "--rate", "0", "--tau-min", "1.2e-12", "--tau-max", "1.7e-12",
        "--out", out_dir, "--no-plot",
    ])
    assert code == 0
    assert "tau_opt=" in capsys.readouterr().out
    trace = np.loadtxt(os.path.join(out_dir, "optimize_tau_trace.csv"),
                       delimiter=",", skiprows=1)
    assert trace.shape[1] == 2 and trace.shape[0] >= 4


def test_filter_sweep_command(tmp_path):
    out_dir = str(tmp_path / "filt")
    code = main([
        "filter-sweep", "--model", "analytic_jta", "--preset", "symmetric-generic",
        "--tau", "1.4e-12", "--rates", "0.05", "--n-widths", "4",
        "--out", out_dir, "--no-plot",
    ])
    assert code == 0
    rows = (tmp_path / "filt" / "filter_sweep.csv").read_text().splitlines()
    assert len(rows) == 5


def test_exit_code_config_error(tmp_path, capsys):
    bad = tmp_path / "bad.ini"
    bad.write_text("[run]\nmodel = warp\n")
    assert main(["sweep", "--config", str(bad), "--rates", "0.1"]) == 2
    assert "config error" in capsys.readouterr().err
    # sweep without any rates also counts as a config error
    assert main(["sweep", "--preset", "asymmetric-generic", "--tau", "5.7e-13"]) == 2


def test_exit_code_numerical_error(capsys, tmp_path):
    # negative target rate is a domain error in the rate inversion
    code = main([
        "jta", "--tau", "5.7e-13", "--rate", "-0.5",
        "--out", str(tmp_path / "x"), "--no-plot",
    ])
    assert code == 3
    assert "error" in capsys.readouterr().err
