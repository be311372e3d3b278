"""Acceptance gate.

One test per frozen criterion, each printing a single PASS/FAIL line with the
measured number next to its tolerance (run with -s to see the lines as they
go by; pytest -v gives the same one-line-per-criterion view).  Everything is
checked against an independent oracle: fixed-step RK4 for the coefficient
ODEs, midpoint-exponential Schrodinger stepping for states, the shoelace
formula for loop areas, and plain arithmetic for the rest.
"""
import json
import math
from dataclasses import replace

import numpy as np
import pytest

from drivenosc import (DriveAxis, OscillatorParams, ResonanceError,
                       IC_HOMOGENEOUS_FREE, IC_IDENTITY_START, OdeProblem,
                       accumulate_phase_arrays, analytic_state, aux_rhs,
                       basis_state, berry_sweep, beta_of_eta, closed_form_eta,
                       commensurate_period, drive_amplitude,
                       ellipse_phase_per_cycle, eta_trajectory, expect_a,
                       fidelity, integrate_rk4, invariant_matrix,
                       liouville_residual, loop_signed_area, propagate_oracle)
from drivenosc.cli import main as cli_main

REF = OscillatorParams(mu=1.0, omega1=1.0, omega2=1.0, Omega=0.3, Q=1.0, E=0.2)


def _report(num, label, ok, detail):
    print(f"criterion {num:>2} [{label}]: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} {label}: {detail}"


def _rk4_reference(dt, t1):
    prob = OdeProblem(dimension=2,
                      rhs=lambda t, s: aux_rhs(REF, DriveAxis.X, s, t),
                      y0=np.array([0.0 + 0.0j, 0.0 + 0.0j]),
                      t0=0.0, t1=t1, dt=dt)
    return integrate_rk4(prob)


@pytest.fixture(scope="module")
def long_rk4():
    """One dt=1e-4 integration to t=100 shared by criteria 1 and 2."""
    return _rk4_reference(1e-4, 100.0)


def test_criterion_01_closed_form_vs_rk4(long_rk4):
    ts, ys = long_rk4
    sub = slice(None, None, 100)
    err = float(np.max(np.abs(closed_form_eta(REF, ts[sub]) - ys[sub, 0])))
    _report(1, "closed form vs RK4, t<=100", err < 1e-8, f"max err {err:.3e} < 1e-8")


def test_criterion_02_second_component_identity(long_rk4):
    _, ys = long_rk4
    err = float(np.max(np.abs(ys[:, 1].real - np.abs(ys[:, 0]) ** 2 / REF.alpha)))
    _report(2, "delta = |eta|^2/alpha along ODE", err < 1e-9, f"max err {err:.3e} < 1e-9")


def test_criterion_03_defining_equation_and_mutation():
    rng = np.random.default_rng(3)
    worst = max(liouville_residual(REF, DriveAxis.X, float(t), 64, h=1e-5)
                for t in rng.uniform(0.1, 20.0, size=20))
    mutated = liouville_residual(REF, DriveAxis.X, 7.0, 64, eta_factor=1.01)
    ok = worst < 1e-8 and mutated > 1e-3
    _report(3, "invariant equation residual", ok,
            f"max residual {worst:.3e} < 1e-8, mutated {mutated:.3e} > 1e-3")


def test_criterion_04_spectrum_conserved():
    target = REF.alpha * np.arange(48)
    worst = 0.0
    for t in (0.0, 3.0, 7.0, 20.0):
        vals = np.sort(np.linalg.eigvalsh(invariant_matrix(REF, DriveAxis.X, t, 64)))
        worst = max(worst, float(np.max(np.abs(vals[:48] - target))))
    _report(4, "48 low eigenvalues at 4 times", worst < 1e-6,
            f"max dev {worst:.3e} < 1e-6")


def test_criterion_05_exact_state_vs_oracle():
    ana = analytic_state(REF, DriveAxis.X, 0, 10.0, 64)
    orc = propagate_oracle(REF, DriveAxis.X, basis_state(64, 0), 10.0, 1e-3)
    ov = fidelity(orc, ana)
    mag, ang = abs(ov), abs(math.atan2(ov.imag, ov.real))
    ok = mag >= 1.0 - 1e-6 and ang < 1e-4
    _report(5, "overlap at t=10", ok,
            f"1-|ov| {1.0 - mag:.3e} <= 1e-6, |arg| {ang:.3e} < 1e-4")


def test_criterion_06_expectation_readout():
    ts = np.linspace(0.0, 50.0, 101)
    beta = beta_of_eta(eta_trajectory(REF, DriveAxis.X, ts), REF.alpha)
    psi = basis_state(64, 0)
    worst = 0.0
    for k in range(1, ts.size):
        psi = propagate_oracle(REF, DriveAxis.X, psi, float(ts[k]), 1e-3,
                               t0=float(ts[k - 1]))
        worst = max(worst, abs(expect_a(psi) + beta[k]))
    _report(6, "<a> = -beta to t=50", worst < 1e-6, f"max dev {worst:.3e} < 1e-6")


def test_criterion_07_loop_area_duality_both_conventions():
    p = replace(REF, Omega=0.5)
    spec = commensurate_period(p.omega1, p.Omega)
    grid = np.linspace(0.0, spec.T, 100_001)
    detail = []
    ok = True
    for ic in (IC_IDENTITY_START, IC_HOMOGENEOUS_FREE):
        eta = eta_trajectory(p, DriveAxis.X, grid, ic=ic)
        _, geom, _ = accumulate_phase_arrays(p, DriveAxis.X, 0, grid, ic=ic)
        resid = abs(geom[-1] + 2.0 * loop_signed_area(beta_of_eta(eta, p.alpha)))
        ok = ok and resid < 1e-6
        detail.append(f"{ic} {resid:.3e}")
    _report(7, "loop phase = -2*area, T=4pi", ok, " / ".join(detail) + " < 1e-6")


def test_criterion_08_adiabatic_limit():
    rows = berry_sweep(REF, [0.1, 0.05, 0.025, 0.0125])
    ratios = [r.ratio for r in rows]
    diffs = np.abs(np.diff(ratios))
    shrink_ok = bool(np.all(diffs[:-1] / diffs[1:] >= 2.0))
    want = ellipse_phase_per_cycle(replace(REF, Omega=0.0125)) / 0.0125
    rel = abs(ratios[-1] / want - 1.0)
    ok = shrink_ok and rel < 0.01
    _report(8, "per-cycle ratio converges", ok,
            f"diff shrink {diffs[0]/diffs[1]:.2f},{diffs[1]/diffs[2]:.2f} >= 2, "
            f"endpoint rel {rel:.3e} < 0.01")


def test_criterion_09_resonant_growth():
    p = replace(REF, Omega=1.0)
    with pytest.raises(ResonanceError):
        closed_form_eta(p, 1.0)
    grid = np.linspace(0.0, 100.0, 2001)
    eta = eta_trajectory(p, DriveAxis.X, grid, numeric=True)
    mask = grid >= 50.0
    slope = float(np.polyfit(grid[mask], np.abs(eta[mask]), 1)[0])
    want = p.alpha * drive_amplitude(p, DriveAxis.X) / 2.0
    rel = abs(slope / want - 1.0)
    _report(9, "secular growth at resonance", rel < 0.02,
            f"slope {slope:.6f} vs {want:.6f}, rel {rel:.3e} < 0.02")


def test_criterion_10_determinism_and_orders(tmp_path):
    def rk4_err(dt):
        prob = OdeProblem(dimension=1, rhs=lambda t, y: -1j * y,
                          y0=np.array([1.0 + 0.0j]), t0=0.0, t1=10.0, dt=dt)
        _, y = integrate_rk4(prob)
        return abs(y[-1, 0] - np.exp(-10.0j))

    r4 = rk4_err(0.05) / rk4_err(0.025)

    def orc(dt):
        return propagate_oracle(REF, DriveAxis.X, basis_state(64, 0), 2.0, dt).amps
    a4, a2, a1 = orc(4e-3), orc(2e-3), orc(1e-3)
    r2 = np.linalg.norm(a4 - a2) / np.linalg.norm(a2 - a1)

    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"mu": 1.0, "omega1": 1.0, "omega2": 1.0,
                               "Omega": 0.3, "Q": 1.0, "E": 0.2, "t_max": 5.0}))
    o1, o2 = tmp_path / "a.csv", tmp_path / "b.csv"
    cli_main(["solve", "--config", str(cfg), "--out", str(o1), "--quiet"])
    cli_main(["solve", "--config", str(cfg), "--out", str(o2), "--quiet"])
    identical = o1.read_bytes() == o2.read_bytes()

    ok = 14.0 <= r4 <= 18.0 and 3.0 <= r2 <= 5.0 and identical
    _report(10, "orders and reproducibility", ok,
            f"RK4 ratio {r4:.2f} in [14,18], oracle ratio {r2:.2f} in [3,5], "
            f"CSV identical {identical}")
