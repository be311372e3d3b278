"""Command-line entry points: solve (CSV trajectory), verify (consistency
battery), sweep (per-cycle geometric phase vs drive frequency).

Configuration is one flat JSON object; unknown keys are rejected so typos
fail loudly.  All CSV output is written atomically (temp file + rename in the
target directory) with 17 significant digits, which makes reruns byte-stable.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, replace

import numpy as np

from . import phases
from .auxiliary import (IC_CONVENTIONS, IC_HOMOGENEOUS_FREE, IC_IDENTITY_START,
                        beta_of_eta, delta_of_eta, eta_trajectory)
from .errors import ConfigError, DrivenOscError, ResonanceError
from .params import DriveAxis, OscillatorParams, axis_frequency
from .verification import run_standard_checks

_REQUIRED_KEYS = ("mu", "omega1", "omega2", "Omega", "Q", "E", "t_max")
_DEFAULTS = {
    "alpha": 1.0,
    "n1": 0,
    "n2": 0,
    "dt_out": 0.1,
    "fock_dim": 64,
    "oracle_dt": 1e-3,
    "ic_convention": IC_IDENTITY_START,
}

SOLVE_COLUMNS = ("t", "eta_re", "eta_im", "delta", "beta_re", "beta_im",
                 "phase_total", "phase_geom", "phase_dyn", "exp_a_re", "exp_a_im")
SWEEP_COLUMNS = ("Omega", "phase_per_cycle", "ratio", "loop_area",
                 "area_check_residual")


@dataclass(frozen=True)
class RunConfig:
    """Validated run configuration shared by all workflows."""

    params: OscillatorParams
    n1: int
    n2: int
    t_max: float
    dt_out: float
    fock_dim: int
    oracle_dt: float
    ic_convention: str


def load_config(path: str) -> RunConfig:
    """Parse and validate a JSON config; any problem raises ConfigError."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config must be a single JSON object")

    known = set(_REQUIRED_KEYS) | set(_DEFAULTS)
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
    missing = sorted(k for k in _REQUIRED_KEYS if k not in raw)
    if missing:
        raise ConfigError(f"missing config keys: {', '.join(missing)}")

    merged = dict(_DEFAULTS)
    merged.update(raw)

    def number(key):
        v = merged[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ConfigError(f"{key} must be a number, got {v!r}")
        return float(v)

    def integer(key, minimum):
        v = merged[key]
        if isinstance(v, bool) or not isinstance(v, int):
            raise ConfigError(f"{key} must be an integer, got {v!r}")
        if v < minimum:
            raise ConfigError(f"{key} must be >= {minimum}, got {v}")
        return v

    try:
        params = OscillatorParams(mu=number("mu"), omega1=number("omega1"),
                                  omega2=number("omega2"), Omega=number("Omega"),
                                  Q=number("Q"), E=number("E"),
                                  alpha=number("alpha"))
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    t_max = number("t_max")
    dt_out = number("dt_out")
    oracle_dt = number("oracle_dt")
    if t_max <= 0:
        raise ConfigError(f"t_max must be positive, got {t_max}")
    if not 0 < dt_out <= t_max:
        raise ConfigError(f"dt_out must lie in (0, t_max], got {dt_out}")
    if oracle_dt <= 0:
        raise ConfigError(f"oracle_dt must be positive, got {oracle_dt}")
    ic = merged["ic_convention"]
    if ic not in IC_CONVENTIONS:
        raise ConfigError(
            f"ic_convention must be one of {list(IC_CONVENTIONS)}, got {ic!r}")

    return RunConfig(params=params, n1=integer("n1", 0), n2=integer("n2", 0),
                     t_max=t_max, dt_out=dt_out,
                     fock_dim=integer("fock_dim", 16), oracle_dt=oracle_dt,
                     ic_convention=ic)


@dataclass(frozen=True)
class TimeSeries:
    """Sampled x-axis trajectory with its phase decomposition."""

    t: np.ndarray
    eta: np.ndarray
    delta: np.ndarray
    beta: np.ndarray
    phase_total: np.ndarray
    phase_geom: np.ndarray
    phase_dyn: np.ndarray
    exp_a: np.ndarray


def build_time_series(params: OscillatorParams, axis: DriveAxis, n: int,
                      t_max: float, dt_out: float, ic: str = IC_IDENTITY_START,
                      numeric: bool = False) -> TimeSeries:
    """Uniform samples every dt_out up to t_max, phases accumulated on an
    internal refinement of the output grid."""
    n_out = int(math.floor(t_max / dt_out + 1e-9))
    t_end = n_out * dt_out
    scale = max(axis_frequency(params, axis), params.Omega, 1.0)
    refine = max(1, int(math.ceil(dt_out * scale / 0.005)))
    refine += refine % 2
    fine = np.linspace(0.0, t_end, n_out * refine + 1)

    eta_fine = eta_trajectory(params, axis, fine, ic=ic, numeric=numeric)
    beta_fine = beta_of_eta(eta_fine, params.alpha)
    total_f, geom_f, dyn_f = phases.accumulate_phase_arrays(
        params, axis, n, fine, ic=ic, numeric=numeric)

    sl = slice(None, None, refine)
    eta = eta_fine[sl]
    beta = beta_fine[sl]
    return TimeSeries(t=fine[sl], eta=eta,
                      delta=delta_of_eta(eta, params.alpha), beta=beta,
                      phase_total=total_f[sl], phase_geom=geom_f[sl],
                      phase_dyn=dyn_f[sl], exp_a=-beta)


def _atomic_write_csv(path: str, header, rows):
    """Write CSV via temp file + rename; 17 significant digits per cell."""
    directory = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(prefix=".drivenosc-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(",".join(header) + "\n")
            for row in rows:
                # + 0.0 folds IEEE negative zero into plain 0
                fh.write(",".join(format(float(v) + 0.0, ".17g") for v in row) + "\n")
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def cmd_solve(config: RunConfig, out_path: str, numeric: bool = False,
              quiet: bool = False) -> int:
    """Write the sampled x-axis trajectory (Fock index n1) as CSV."""
    series = build_time_series(config.params, DriveAxis.X, config.n1,
                               config.t_max, config.dt_out,
                               ic=config.ic_convention, numeric=numeric)
    rows = zip(series.t, series.eta.real, series.eta.imag, series.delta,
               series.beta.real, series.beta.imag, series.phase_total,
               series.phase_geom, series.phase_dyn, series.exp_a.real,
               series.exp_a.imag)
    _atomic_write_csv(out_path, SOLVE_COLUMNS, rows)
    if not quiet:
        print(f"wrote {out_path} ({series.t.size} rows)")
    return 0


def cmd_verify(config: RunConfig, numeric: bool = False, quiet: bool = False) -> int:
    """Run the consistency battery; exit 0 only if nothing failed."""
    results = run_standard_checks(config.params, config.fock_dim, config.t_max,
                                  config.oracle_dt, ic=config.ic_convention,
                                  numeric=numeric)
    n_fail = sum(r.failed for r in results)
    for r in results:
        if not quiet or r.failed:
            print(r.line())
    n_pass = sum(r.status == "PASS" for r in results)
    n_skip = sum(r.status == "SKIP" for r in results)
    print(f"verify: {n_pass} passed, {n_skip} skipped, {n_fail} failed")
    return 1 if n_fail else 0


def cmd_sweep(config: RunConfig, omegas, out_path: str, quiet: bool = False,
              samples_per_cycle: int = 4096) -> int:
    """Per-cycle geometric phase of the steady-state loop at each drive
    frequency, with the shoelace-area cross-check column."""
    for w in omegas:
        if not 0.0 < w < 0.5 * config.params.omega1:
            raise ConfigError(
                f"sweep frequency {w} outside (0, omega1/2) for "
                f"omega1={config.params.omega1}")
    rows = []
    sweep = phases.berry_sweep(config.params, omegas,
                               samples_per_cycle=samples_per_cycle)
    for point in sweep:
        p = replace(config.params, Omega=point.Omega)
        period = 2.0 * math.pi / point.Omega
        m = samples_per_cycle + samples_per_cycle % 2
        grid = np.linspace(0.0, period, m + 1)
        eta = eta_trajectory(p, DriveAxis.X, grid, ic=IC_HOMOGENEOUS_FREE)
        area = phases.loop_signed_area(beta_of_eta(eta, p.alpha))
        rows.append((point.Omega, point.phase_per_cycle, point.ratio, area,
                     abs(point.phase_per_cycle + 2.0 * area)))
    _atomic_write_csv(out_path, SWEEP_COLUMNS, rows)
    if not quiet:
        print(f"wrote {out_path} ({len(rows)} rows)")
    return 0


def _parse_omegas(text: str):
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad --omegas list {text!r}: {exc}") from exc
    if not values:
        raise ConfigError("--omegas must list at least one frequency")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="drivenosc",
        description="Exact invariant-based solution of a harmonically bound "
                    "charge in a rotating electric field, with independent "
                    "numerical cross-checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--numeric", action="store_true",
                       help="force the quadrature path instead of closed forms")
        p.add_argument("--homogeneous-free", action="store_true",
                       help="use the steady-state (no-transient) convention")
        p.add_argument("--fock-dim", type=int, default=None, metavar="N",
                       help="override the truncated basis size")
        p.add_argument("--quiet", action="store_true",
                       help="suppress non-essential output")

    p_solve = sub.add_parser("solve", help="sample the exact trajectory to CSV")
    common(p_solve)
    p_solve.add_argument("--out", required=True, help="output CSV path")

    p_verify = sub.add_parser("verify", help="run the consistency battery")
    common(p_verify)

    p_sweep = sub.add_parser("sweep", help="per-cycle geometric phase vs Omega")
    common(p_sweep)
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--omegas", required=True,
                         help="comma-separated drive frequencies, each < omega1/2")
    return parser


def _apply_overrides(config: RunConfig, args) -> RunConfig:
    if args.homogeneous_free:
        config = replace(config, ic_convention=IC_HOMOGENEOUS_FREE)
    if args.fock_dim is not None:
        if args.fock_dim < 16:
            raise ConfigError(f"--fock-dim must be >= 16, got {args.fock_dim}")
        config = replace(config, fock_dim=args.fock_dim)
    return config


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _apply_overrides(load_config(args.config), args)
        if args.command == "solve":
            return cmd_solve(config, args.out, numeric=args.numeric,
                             quiet=args.quiet)
        if args.command == "verify":
            return cmd_verify(config, numeric=args.numeric, quiet=args.quiet)
        return cmd_sweep(config, _parse_omegas(args.omegas), args.out,
                         quiet=args.quiet)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except ResonanceError as exc:
        print(f"error: {exc} (rerun with --numeric)", file=sys.stderr)
        return 1
    except (DrivenOscError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
