"""End-to-end tests of the command-line front end."""

import json

import numpy as np
import pytest

from latticelight.cli import EXIT_CONFIG, EXIT_IO, EXIT_OK, main
from latticelight.output import read_table


def run(args):
    return main([str(a) for a in args])


def test_dispersion_origin_row_and_header(tmp_path):
    out = tmp_path / "d.csv"
    assert run(["dispersion", "--points", 3, "--kmax", 0.5, "--out", out]) == EXIT_OK
    header, columns, rows = read_table(out)
    assert header["command"] == "dispersion"
    assert header["seed"] == 0
    assert "artifact_version" in header
    assert columns == ["kx", "ky", "kz", "omega_plus", "omega_minus", "vg_plus", "vg_minus"]
    origin = [r for r in rows if float(r[0]) == 0.0 and float(r[1]) == 0.0 and float(r[2]) == 0.0]
    assert len(origin) == 1
    assert float(origin[0][3]) == 0.0 and float(origin[0][4]) == 0.0


def test_dispersion_diagonal_split(tmp_path):
    out = tmp_path / "d.csv"
    assert run(["dispersion", "--diagonal", "--points", 5, "--kmax", 0.04, "--out", out]) == EXIT_OK
    _, _, rows = read_table(out)
    for row in rows[1:]:  # skip the origin
        vg_plus, vg_minus = float(row[5]), float(row[6])
        assert vg_minus > 1.0 / np.sqrt(3.0) > vg_plus  # opposite-sign split


def test_determinism_byte_identical(tmp_path):
    pairs = [
        (["dispersion", "--points", 2, "--kmax", 0.3], "d"),
        (["maxwell-convergence", "--levels", 2, "--t", 5], "m"),
        (["flight"], "f"),
        (["tilt", "--directions", 8], "t"),
        (["fock-suite", "--momenta", 1, "--conjecture-samples", 3], "fs"),
    ]
    for args, stem in pairs:
        out1 = tmp_path / f"{stem}1.out"
        out2 = tmp_path / f"{stem}2.out"
        assert run(args + ["--seed", 9, "--out", out1]) == EXIT_OK
        assert run(args + ["--seed", 9, "--out", out2]) == EXIT_OK
        assert out1.read_bytes() == out2.read_bytes()


def test_maxwell_convergence_content(tmp_path):
    out = tmp_path / "m.csv"
    assert run(["maxwell-convergence", "--levels", 4, "--t", 50, "--out", out]) == EXIT_OK
    header, _, rows = read_table(out)
    assert float(rows[0][0]) == 0.0  # single-point row first
    assert float(rows[0][1]) <= 1e-10
    assert abs(header["fitted_residual_slope"] - 1.0) <= 0.15


def test_fock_suite_report(tmp_path):
    out = tmp_path / "fock.json"
    assert run(["fock-suite", "--momenta", 2, "--conjecture-samples", 5, "--seed", 11, "--out", out]) == EXIT_OK
    report = json.loads(out.read_text())
    assert report["passed"] is True
    assert report["seed"] == 11
    assert report["space"]["dimension"] == 256
    names = [c["name"] for c in report["checks"]]
    assert names == [
        "anticommutators",
        "pair_commutators",
        "schwartz_bound",
        "polarization_modes",
        "composite_bosons",
    ]


def test_fock_suite_size_guard(tmp_path):
    assert run(["fock-suite", "--momenta", 9, "--out", tmp_path / "x.json"]) == EXIT_CONFIG


def test_flight_equal_energies_and_linearity(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"energies": [["a", 1e9], ["b", 1e9]]}))
    out = tmp_path / "f.csv"
    assert run(["flight", "--config", cfg, "--out", out]) == EXIT_OK
    _, _, rows = read_table(out)
    assert float(rows[0][6]) == 0.0

    out1 = tmp_path / "f1.csv"
    out2 = tmp_path / "f2.csv"
    assert run(["flight", "--distance-m", 1e25, "--out", out1]) == EXIT_OK
    assert run(["flight", "--distance-m", 2e25, "--out", out2]) == EXIT_OK
    d1 = float(read_table(out1)[2][0][6])
    d2 = float(read_table(out2)[2][0][6])
    assert d2 == pytest.approx(2.0 * d1, rel=1e-12)
    assert d1 != 0.0


def test_tilt_rows(tmp_path):
    out = tmp_path / "t.csv"
    assert run(["tilt", "--k-values", "0.05,0.1", "--directions", 64, "--out", out]) == EXIT_OK
    _, columns, rows = read_table(out)
    assert columns == ["k", "tilt_exact_max", "tilt_exact_mean", "estimate_2k"]
    for row in rows:
        k = float(row[0])
        assert float(row[3]) == pytest.approx(2.0 * k)
        assert 0.0 < float(row[1]) < 2.0 * k


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"points": 3, "kmax": 0.4}))
    out = tmp_path / "d.csv"
    assert run(["dispersion", "--config", cfg, "--points", 2, "--out", out]) == EXIT_OK
    header, _, rows = read_table(out)
    assert header["config"]["points"] == 2  # flag wins
    assert header["config"]["kmax"] == 0.4  # config file value kept
    assert len(rows) == 8


def test_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["dispersion", "--config", bad, "--out", tmp_path / "x.csv"]) == EXIT_CONFIG
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"no_such_key": 1}))
    assert run(["dispersion", "--config", unknown, "--out", tmp_path / "x.csv"]) == EXIT_CONFIG
    assert run(["dispersion", "--config", tmp_path / "missing.json", "--out", tmp_path / "x.csv"]) == EXIT_CONFIG
    assert run(["flight", "--energies", "nonsense", "--out", tmp_path / "x.csv"]) == EXIT_CONFIG


def test_io_error_exit_code(tmp_path):
    out = tmp_path / "no" / "such" / "dir" / "d.csv"
    assert run(["dispersion", "--points", 2, "--out", out]) == EXIT_IO


def test_bad_flag_exits_two(tmp_path):
    with pytest.raises(SystemExit) as err:
        run(["dispersion", "--sign", "sideways"])
    assert err.value.code == EXIT_CONFIG
