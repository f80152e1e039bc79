"""Command line behavior: outputs, exit codes, and rerun reproducibility."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from magnomech.cli import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_NONCONVERGENCE,
    EXIT_OK,
    EXIT_PARSE,
    EXIT_UNSTABLE,
    main,
)

MICROSCOPIC_BAD = [
    "--set", "delta_n_over_2pi_hz=10e6",
    "--set", "drive.mode=microscopic",
    "--set", "drive.g0_over_2pi_hz=2.0",
    "--set", "drive.epsilon_l_rad_per_s=7.1e14",
    "--set", "drive.delta_m_bare_over_2pi_hz=9e6",
]


def run_cli(*argv):
    return main(list(argv))


# -------------------------------------------------------------------- point


def test_point_baseline_report(capsys):
    assert run_cli("point", "--set", "delta_n_over_2pi_hz=-13e6") == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["stability_margin"] < 0
    neg = report["negativities"]
    assert neg["e_nm"] == pytest.approx(0.1076, abs=2e-4)
    assert neg["e_mb"] == pytest.approx(0.1503, abs=2e-4)
    assert neg["e_nb"] == pytest.approx(0.1392, abs=2e-4)
    steady = report["steady_state"]
    assert steady["iterations"] == 0
    assert steady["coupling_G_eff_abs"] > 0


def test_point_nonrecip_report(capsys):
    assert (
        run_cli(
            "point",
            "--set", "delta_n_over_2pi_hz=-13e6",
            "--set", "delta_B_over_2pi_hz=2e6",
            "--nonrecip",
        )
        == EXIT_OK
    )
    report = json.loads(capsys.readouterr().out)
    block = report["nonreciprocity"]
    assert block["delta_B_magnitude"] == pytest.approx(2e6 * 2 * 3.141592653589793)
    for key in ("n_nm", "n_mb", "n_nb"):
        assert 0.0 <= block[key] <= 1.0


def test_point_microscopic_drive(capsys):
    assert (
        run_cli(
            "point",
            "--set", "delta_n_over_2pi_hz=10e6",
            "--set", "drive.mode=microscopic",
            "--set", "drive.g0_over_2pi_hz=0.2",
            "--set", "drive.epsilon_l_rad_per_s=7.1e14",
            "--set", "drive.delta_m_bare_over_2pi_hz=9e6",
        )
        == EXIT_OK
    )
    report = json.loads(capsys.readouterr().out)
    steady = report["steady_state"]
    assert steady["iterations"] > 1
    assert steady["coupling_G_eff_abs"] / (2 * 3.141592653589793) == pytest.approx(
        4.538e6, rel=1e-2
    )
    assert steady["q_s"] < 0


# -------------------------------------------------------------------- sweep


def test_sweep_writes_csv_and_sidecar(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code = run_cli(
        "sweep",
        "--set", "delta_n_over_2pi_hz=-13e6",
        "--axis1", "delta_B:-2e6:2e6:3",
        "--out", str(out),
    )
    assert code == EXIT_OK
    text = out.read_text()
    lines = text.splitlines()
    assert lines[0] == "delta_B,status,stability_margin,e_nm,e_mb,e_nb"
    assert len(lines) == 4
    meta = json.loads((tmp_path / "s.meta.json").read_text())
    assert meta["axis1"]["parameter"] == "delta_B"
    # endpoints were converted from /2pi Hz to rad/s
    assert meta["axis1"]["stop"] == pytest.approx(2e6 * 2 * 3.141592653589793)


def test_sweep_json_lines_format(tmp_path):
    out = tmp_path / "s.jsonl"
    code = run_cli(
        "sweep",
        "--axis1", "beta:0:3.14159:3",
        "--out", str(out),
        "--format", "json-lines",
    )
    assert code == EXIT_OK
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 3
    assert records[0]["status"] == "ok"


def test_sweep_nonrecip_quantities(tmp_path):
    out = tmp_path / "n.csv"
    code = run_cli(
        "sweep",
        "--set", "delta_n_over_2pi_hz=-13e6",
        "--set", "delta_B_over_2pi_hz=2e6",
        "--axis1", "beta:2.5:3.8:3",
        "--nonrecip",
        "--out", str(out),
    )
    assert code == EXIT_OK
    header = out.read_text().splitlines()[0]
    assert header == "beta,status,stability_margin,n_nm,n_mb,n_nb"


def test_sweep_rerun_from_meta_is_byte_identical(tmp_path):
    out1 = tmp_path / "fig.csv"
    assert run_cli("figure", "fig2b", "--points", "7", "--out", str(out1)) == EXIT_OK
    out2 = tmp_path / "rerun.csv"
    code = run_cli(
        "sweep", "--from-meta", str(tmp_path / "fig.meta.json"), "--out", str(out2)
    )
    assert code == EXIT_OK
    assert out1.read_bytes() == out2.read_bytes()


# ------------------------------------------------------------------- figure


def test_figure_preset_output(tmp_path):
    out = tmp_path / "f.csv"
    code = run_cli("figure", "fig6c", "--points", "3", "--out", str(out))
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "temperature,delta_B,status,stability_margin,e_nb"
    assert len(lines) == 1 + 3 * 3  # two axes: 3 x 3 grid
    meta = json.loads((tmp_path / "f.meta.json").read_text())
    assert meta["preset"] == "fig6c"


def test_figure_set_override(tmp_path):
    out = tmp_path / "f.csv"
    code = run_cli(
        "figure", "fig2b", "--points", "3",
        "--set", "temperature_k=0.05",
        "--out", str(out),
    )
    assert code == EXIT_OK
    meta = json.loads((tmp_path / "f.meta.json").read_text())
    assert meta["params_rad_per_s"]["temperature"] == 0.05


def test_figure_default_out_name(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert run_cli("figure", "fig2b", "--points", "3") == EXIT_OK
    assert (tmp_path / "fig2b.csv").exists()
    assert (tmp_path / "fig2b.meta.json").exists()


# -------------------------------------------------------------------- peaks


def test_peaks_triangle(tmp_path, capsys):
    path = tmp_path / "t.csv"
    path.write_text(
        "beta,status,stability_margin,e_nb\n"
        "0,ok,-1,0\n1,ok,-1,1\n2,ok,-1,0.5\n"
    )
    assert run_cli("peaks", str(path)) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    (entry,) = report["peaks"]
    assert entry["quantity"] == "e_nb"
    assert entry["argmax"] == 1.0
    assert entry["max"] == 1.0
    assert entry["window_99pct"] == [1.0, 1.0]


def test_peaks_grouped_by_axis2(tmp_path, capsys):
    path = tmp_path / "g.csv"
    path.write_text(
        "temperature,delta_B,status,stability_margin,e_nb\n"
        "0,-1,ok,-1,0.2\n0,1,ok,-1,0.4\n"
        "1,-1,ok,-1,0.1\n1,1,ok,-1,0.6\n"
    )
    assert run_cli("peaks", str(path)) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert len(report["peaks"]) == 2  # one entry per delta_B group
    by_group = {entry["delta_B"]: entry for entry in report["peaks"]}
    assert by_group[-1.0]["argmax"] == 0.0
    assert by_group[1.0]["argmax"] == 1.0


def test_peaks_skips_missing_values(tmp_path, capsys):
    path = tmp_path / "m.csv"
    path.write_text(
        "beta,status,stability_margin,e_nb\n"
        "0,ok,-1,0.3\n1,unstable,2.0,\n2,ok,-1,0.1\n"
    )
    assert run_cli("peaks", str(path)) == EXIT_OK
    report = json.loads(capsys.readouterr().out)
    assert report["peaks"][0]["argmax"] == 0.0


# --------------------------------------------------------------- exit codes


def test_exit_config_error_unknown_key(capsys):
    assert run_cli("point", "--set", "nope=1") == EXIT_CONFIG
    assert "error" in capsys.readouterr().err


def test_exit_config_error_sweep_without_axis(tmp_path):
    assert run_cli("sweep", "--out", str(tmp_path / "x.csv")) == EXIT_CONFIG


def test_exit_config_error_sweep_without_out():
    assert run_cli("sweep", "--axis1", "beta:0:1:3") == EXIT_CONFIG


def test_exit_config_error_contrast_needs_pairing(tmp_path):
    code = run_cli(
        "sweep", "--axis1", "beta:0:1:3", "--quantities", "n_nb",
        "--out", str(tmp_path / "x.csv"),
    )
    assert code == EXIT_CONFIG


def test_exit_unstable(capsys):
    assert run_cli("point", "--set", "delta_n_over_2pi_hz=1.2e6") == EXIT_UNSTABLE
    assert "unstable" in capsys.readouterr().err


def test_exit_nonconvergence(capsys):
    assert run_cli("point", *MICROSCOPIC_BAD) == EXIT_NONCONVERGENCE
    assert "converge" in capsys.readouterr().err


def test_exit_io_error(capsys):
    code = run_cli(
        "sweep", "--axis1", "beta:0:1:2", "--out", "/nonexistent-dir/x.csv"
    )
    assert code == EXIT_IO


def test_exit_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("a,b\n1,2\n")
    assert run_cli("peaks", str(bad)) == EXIT_PARSE


def test_unknown_figure_id_is_usage_error():
    with pytest.raises(SystemExit) as excinfo:
        run_cli("figure", "fig9z", "--points", "3")
    assert excinfo.value.code == 2


# --------------------------------------------------------------- entry point


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "magnomech", "--version"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("magnomech ")
