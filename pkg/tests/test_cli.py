"""Command line workflows: config validation, CSV output, exit codes."""
import csv
import json

import numpy as np
import pytest

from drivenosc import ConfigError
from drivenosc.cli import (SOLVE_COLUMNS, SWEEP_COLUMNS, load_config, main)

BASE = {"mu": 1.0, "omega1": 1.0, "omega2": 1.0, "Omega": 0.3,
        "Q": 1.0, "E": 0.2, "t_max": 5.0}


def write_config(tmp_path, name="cfg.json", **overrides):
    cfg = dict(BASE)
    cfg.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def read_csv(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    header = tuple(rows[0])
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    return header, data


def test_load_config_defaults(tmp_path):
    cfg = load_config(write_config(tmp_path))
    assert cfg.params.Omega == 0.3
    assert cfg.fock_dim == 64
    assert cfg.n1 == 0
    assert cfg.ic_convention == "identity-start"


@pytest.mark.parametrize("overrides,fragment", [
    (dict(extra=1.0), "unknown"),
    (dict(Q=True), "number"),
    (dict(n1=-1), ">="),
    (dict(fock_dim=8), ">="),
    (dict(dt_out=9.0), "dt_out"),
    (dict(t_max=-1.0), "t_max"),
    (dict(ic_convention="bogus"), "ic_convention"),
    (dict(mu=-1.0), "mu"),
])
def test_load_config_rejects(tmp_path, overrides, fragment):
    path = write_config(tmp_path, **overrides)
    with pytest.raises(ConfigError, match=fragment):
        load_config(path)


def test_load_config_missing_key(tmp_path):
    cfg = dict(BASE)
    del cfg["omega1"]
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg))
    with pytest.raises(ConfigError, match="missing"):
        load_config(str(path))


def test_solve_row_count_and_columns(tmp_path):
    cfg = write_config(tmp_path, t_max=50.0, dt_out=0.1)
    out = str(tmp_path / "traj.csv")
    assert main(["solve", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, data = read_csv(out)
    assert header == SOLVE_COLUMNS
    assert data.shape == (501, len(SOLVE_COLUMNS))
    assert data[0, 0] == 0.0
    assert data[-1, 0] == pytest.approx(50.0, abs=1e-12)


def test_solve_undriven_columns(tmp_path):
    # E=0 with n1=1: only time and the level phase move
    cfg = write_config(tmp_path, E=0.0, n1=1)
    out = str(tmp_path / "traj.csv")
    assert main(["solve", "--config", cfg, "--out", out, "--quiet"]) == 0
    header, data = read_csv(out)
    col = {name: data[:, k] for k, name in enumerate(header)}
    for name in ("eta_re", "eta_im", "delta", "beta_re", "beta_im",
                 "phase_geom", "exp_a_re", "exp_a_im"):
        assert np.all(col[name] == 0.0), name
    assert np.allclose(col["phase_dyn"], col["t"], atol=1e-12)
    assert np.array_equal(col["phase_total"], col["phase_dyn"])


def test_solve_byte_identical_reruns(tmp_path):
    cfg = write_config(tmp_path)
    out1, out2 = str(tmp_path / "a.csv"), str(tmp_path / "b.csv")
    assert main(["solve", "--config", cfg, "--out", out1, "--quiet"]) == 0
    assert main(["solve", "--config", cfg, "--out", out2, "--quiet"]) == 0
    with open(out1, "rb") as f1, open(out2, "rb") as f2:
        assert f1.read() == f2.read()


def test_solve_resonant_needs_numeric_flag(tmp_path, capsys):
    cfg = write_config(tmp_path, Omega=1.0)
    out = str(tmp_path / "traj.csv")
    assert main(["solve", "--config", cfg, "--out", out]) == 1
    assert "--numeric" in capsys.readouterr().err
    assert main(["solve", "--config", cfg, "--out", out, "--numeric",
                 "--quiet"]) == 0
    _, data = read_csv(out)
    assert np.all(np.isfinite(data))


def test_solve_homogeneous_free_flag(tmp_path):
    cfg = write_config(tmp_path)
    out = str(tmp_path / "traj.csv")
    assert main(["solve", "--config", cfg, "--out", out, "--quiet",
                 "--homogeneous-free"]) == 0
    header, data = read_csv(out)
    eta0 = complex(data[0, 1], data[0, 2])
    assert eta0 != 0.0       # steady state does not start at the origin


def test_config_error_exit_code(tmp_path, capsys):
    cfg = write_config(tmp_path, extra=1.0)
    assert main(["solve", "--config", cfg, "--out", str(tmp_path / "o.csv")]) == 2
    assert "config error" in capsys.readouterr().err


def test_fock_dim_override_floor(tmp_path, capsys):
    cfg = write_config(tmp_path)
    code = main(["verify", "--config", cfg, "--fock-dim", "8"])
    assert code == 2
    assert ">= 16" in capsys.readouterr().err


def test_verify_small_config_passes(tmp_path, capsys):
    cfg = write_config(tmp_path, t_max=2.0, fock_dim=32)
    assert main(["verify", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "0 failed" in out
    assert out.count("PASS") >= 6


def test_verify_quiet_prints_summary_only(tmp_path, capsys):
    cfg = write_config(tmp_path, t_max=2.0, fock_dim=32)
    assert main(["verify", "--config", cfg, "--quiet"]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert len(out) == 1
    assert out[0].startswith("verify:")


def test_verify_resonant_skips_closed_form(tmp_path, capsys):
    cfg = write_config(tmp_path, Omega=1.0, t_max=2.0, fock_dim=32)
    assert main(["verify", "--config", cfg]) == 0
    out = capsys.readouterr().out
    assert "SKIP" in out
    assert "0 failed" in out


def test_sweep_output(tmp_path):
    cfg = write_config(tmp_path)
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--omegas",
                 "0.1,0.05", "--quiet"]) == 0
    header, data = read_csv(out)
    assert header == SWEEP_COLUMNS
    assert data.shape == (2, len(SWEEP_COLUMNS))
    assert np.array_equal(data[:, 0], [0.1, 0.05])
    assert np.all(data[:, 4] < 1e-6)        # area cross-check residual
    assert np.all(data[:, 3] < 0.0)         # clockwise loop, negative area
    assert data[0, 2] > data[1, 2] > 0.0    # ratio decreases toward the limit


def test_sweep_rejects_out_of_range_frequency(tmp_path, capsys):
    cfg = write_config(tmp_path)
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--omegas", "0.6"]) == 2
    assert "sweep frequency" in capsys.readouterr().err


def test_sweep_rejects_malformed_list(tmp_path):
    cfg = write_config(tmp_path)
    out = str(tmp_path / "sweep.csv")
    assert main(["sweep", "--config", cfg, "--out", out, "--omegas", "0.1,xy"]) == 2
