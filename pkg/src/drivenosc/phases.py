"""Phase bookkeeping: dynamical and geometric parts of the accumulated phase.

Rates for Fock index n, with c(t) the axis drive and beta' = i*(c - omega*beta):

    dynamical  rate = n*omega + |beta|^2*omega - (beta + conj(beta))*c(t)
    geometric  rate = (i/2)*(beta'*conj(beta) - conj(beta')*beta)
                    = -Im(conj(beta)*beta')

The geometric sign is the area convention: over a closed loop of beta the
accumulated geometric phase obeys phi_geom(T) = -2 * (shoelace signed area),
counterclockwise areas positive, so a clockwise steady-state ellipse gives a
positive phase per drive cycle.  PhaseBreakdown.total is the plain sum
geometric + dynamical and is never wrapped mod 2*pi.

The c-number factor that multiplies the displaced number state in the exact
solution is exp(-i*(dynamical - geometric)): differentiating the displacement
operator directly, the expectation of V_dag*(H - i*d/dt)*V picks up the
geometric term with the sign opposite to the area convention above.
wavefunction_phase_at returns that exponent; the split reported here is the
bookkeeping one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .auxiliary import IC_HOMOGENEOUS_FREE, IC_IDENTITY_START, beta_dot, beta_of_eta, eta_trajectory
from .errors import GridError, IncommensurateError, OpenCurveError
from .params import DriveAxis, OscillatorParams, axis_frequency, drive_amplitude, drive_value

_RATIO_RTOL = 1e-12
_CLOSURE_TOL = 1e-9


@dataclass(frozen=True)
class PhaseBreakdown:
    """Accumulated phases at time t, with total = geometric + dynamical."""

    t: float
    total: float
    geometric: float
    dynamical: float


@dataclass(frozen=True)
class LoopSpec:
    """Commensurate closure: omega1/Omega = p/q, loop period T = 2*pi*p/omega1."""

    p: int
    q: int
    T: float


def _rates(params, axis, n, beta, t):
    """(geometric, dynamical) phase rates from beta samples at times t."""
    omega = axis_frequency(params, axis)
    c = drive_value(params, axis, t)
    bdot = beta_dot(params, axis, beta, t)
    geometric = -np.imag(np.conj(beta) * bdot)
    dynamical = n * omega + (beta.real ** 2 + beta.imag ** 2) * omega - 2.0 * beta.real * c
    return geometric, dynamical


def phase_integrand(params: OscillatorParams, axis: DriveAxis, n: int, t: float,
                    ic: str = IC_IDENTITY_START, numeric: bool = False):
    """Pointwise (geometric_rate, dynamical_rate) at time t for Fock index n."""
    if t == 0.0:
        grid = np.array([0.0])
        idx = 0
    else:
        grid = np.array([0.0, float(t)])
        idx = 1
    eta = eta_trajectory(params, axis, grid, ic=ic, numeric=numeric)[idx]
    beta = beta_of_eta(eta, params.alpha)
    g, d = _rates(params, axis, n, beta, t)
    return float(g), float(d)


def cumulative_simpson(f: np.ndarray, h: float) -> np.ndarray:
    """Cumulative composite Simpson on a uniform grid with spacing h.

    Even-index prefixes use the standard pair rule; odd indices integrate the
    parabola through the surrounding three samples over the half pair.
    """
    f = np.asarray(f, dtype=float)
    n = f.size - 1
    out = np.zeros_like(f)
    if n < 1:
        return out
    if n == 1:
        out[1] = 0.5 * h * (f[0] + f[1])
        return out
    pair = (h / 3.0) * (f[0:-2:2] + 4.0 * f[1:-1:2] + f[2::2])
    out[2::2] = np.cumsum(pair)
    # odd interior points: left half of the pair starting at the even neighbor
    left = np.arange(1, n + 1, 2)
    interior = left[left < n]
    out[interior] = out[interior - 1] + (h / 12.0) * (
        5.0 * f[interior - 1] + 8.0 * f[interior] - f[interior + 1])
    if n % 2 == 1:
        out[n] = out[n - 1] + (h / 12.0) * (
            -f[n - 2] + 8.0 * f[n - 1] + 5.0 * f[n])
    return out


def _uniform_spacing(t_grid: np.ndarray) -> float:
    d = np.diff(t_grid)
    h = d[0]
    if not np.allclose(d, h, rtol=1e-9, atol=1e-12):
        raise GridError("phase accumulation requires a uniform grid")
    return float(h)


def accumulate_phase_arrays(params, axis, n, t_grid, ic=IC_IDENTITY_START, numeric=False):
    """(total, geometric, dynamical) arrays on a uniform grid starting at 0."""
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.size < 2:
        raise GridError("need at least two samples to accumulate phases")
    h = _uniform_spacing(t_grid)
    eta = eta_trajectory(params, axis, t_grid, ic=ic, numeric=numeric)
    beta = beta_of_eta(eta, params.alpha)
    geometric, dynamical = _rates(params, axis, n, beta, t_grid)
    total = cumulative_simpson(geometric + dynamical, h)
    return total, cumulative_simpson(geometric, h), cumulative_simpson(dynamical, h)


def accumulate_phases(params: OscillatorParams, axis: DriveAxis, n: int, t_grid,
                      ic: str = IC_IDENTITY_START, numeric: bool = False):
    """PhaseBreakdown at every grid point of a uniform grid from 0."""
    t_grid = np.asarray(t_grid, dtype=float)
    total, geometric, dynamical = accumulate_phase_arrays(
        params, axis, n, t_grid, ic=ic, numeric=numeric)
    return [PhaseBreakdown(t=float(t), total=float(a), geometric=float(g), dynamical=float(d))
            for t, a, g, d in zip(t_grid, total, geometric, dynamical)]


def phases_at(params, axis, n, t, ic=IC_IDENTITY_START, numeric=False,
              substep: float = 0.002) -> PhaseBreakdown:
    """Accumulated phases at a single time, on an internal fine grid."""
    if t == 0.0:
        return PhaseBreakdown(t=0.0, total=0.0, geometric=0.0, dynamical=0.0)
    scale = max(axis_frequency(params, axis), params.Omega, 1.0)
    n_steps = max(2, int(math.ceil(abs(t) * scale / substep)))
    n_steps += n_steps % 2
    grid = np.linspace(0.0, t, n_steps + 1)
    total, geom, dyn = accumulate_phase_arrays(params, axis, n, grid, ic=ic, numeric=numeric)
    return PhaseBreakdown(t=float(t), total=float(total[-1]),
                          geometric=float(geom[-1]), dynamical=float(dyn[-1]))


def total_phase_at(params, axis, n, t, ic=IC_IDENTITY_START, numeric=False) -> float:
    """Accumulated total (geometric + dynamical) phase at a single time."""
    return phases_at(params, axis, n, t, ic=ic, numeric=numeric).total


def wavefunction_phase_at(params, axis, n, t, ic=IC_IDENTITY_START, numeric=False) -> float:
    """Exponent phi in the solution factor exp(-i*phi): dynamical - geometric."""
    b = phases_at(params, axis, n, t, ic=ic, numeric=numeric)
    return b.dynamical - b.geometric


def commensurate_period(omega1: float, Omega: float, max_den: int = 64) -> LoopSpec:
    """Smallest commensurate loop: omega1/Omega = p/q in lowest terms.

    Uses the continued-fraction convergents behind Fraction.limit_denominator;
    raises IncommensurateError when no fraction with denominator <= max_den
    reproduces the ratio to 1e-12 relative.
    """
    if omega1 <= 0 or Omega <= 0:
        raise IncommensurateError("commensurate closure needs positive frequencies")
    ratio = omega1 / Omega
    frac = Fraction(ratio).limit_denominator(max_den)
    p, q = frac.numerator, frac.denominator
    if p < 1 or abs(ratio - p / q) > _RATIO_RTOL * ratio:
        raise IncommensurateError(
            f"omega1/Omega = {ratio!r} has no p/q with q <= {max_den} "
            "within 1e-12 relative")
    return LoopSpec(p=p, q=q, T=2.0 * math.pi * p / omega1)


def loop_signed_area(beta_samples) -> float:
    """Shoelace signed area of a closed beta loop, counterclockwise positive.

    The first and last samples must agree to 1e-9 (they may be the same point
    listed twice; the wrap edge then has zero length).
    """
    b = np.asarray(beta_samples, dtype=np.complex128)
    if b.size < 3:
        raise OpenCurveError("need at least 3 samples to bound an area")
    if abs(b[0] - b[-1]) > _CLOSURE_TOL:
        raise OpenCurveError(
            f"loop does not close: |start - end| = {abs(b[0] - b[-1]):.3e}")
    x, y = b.real, b.imag
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


@dataclass(frozen=True)
class SweepPoint:
    """One row of a drive-frequency sweep of the per-cycle geometric phase."""

    Omega: float
    phase_per_cycle: float
    ratio: float
    per_cycle_phases: tuple


def ellipse_phase_per_cycle(params: OscillatorParams, axis: DriveAxis = DriveAxis.X) -> float:
    """Exact per-cycle geometric phase of the homogeneous-free ellipse.

    The steady-state beta traces an ellipse with semi-axes K'*omega and
    K'*Omega, clockwise, so phi_geom per cycle = 2*pi*K'^2*omega*Omega with
    K' = c0/(omega^2 - Omega^2).
    """
    omega = axis_frequency(params, axis)
    kp = drive_amplitude(params, axis) / (omega * omega - params.Omega ** 2)
    return 2.0 * math.pi * kp * kp * omega * params.Omega


def berry_sweep(params_template: OscillatorParams, omega_list, cycles: int = 1,
                samples_per_cycle: int = 4096):
    """Per-cycle geometric phase of the homogeneous-free loop at several drive
    frequencies, each below omega1/2.

    Returns SweepPoint rows in input order; ratio = phase_per_cycle/Omega
    tends to the adiabatic constant 2*pi*K'^2*omega1 as Omega -> 0.
    """
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    for w in omega_list:
        if not (0.0 < w < 0.5 * params_template.omega1):
            raise ValueError(f"sweep frequency {w} outside (0, omega1/2)")

    rows = []
    m = samples_per_cycle + samples_per_cycle % 2
    for w in omega_list:
        p = replace(params_template, Omega=w)
        period = 2.0 * math.pi / w
        grid = np.linspace(0.0, cycles * period, cycles * m + 1)
        _, geometric, _ = accumulate_phase_arrays(
            p, DriveAxis.X, 0, grid, ic=IC_HOMOGENEOUS_FREE)
        checkpoints = geometric[::m]
        per_cycle = tuple(float(d) for d in np.diff(checkpoints))
        rows.append(SweepPoint(Omega=float(w),
                               phase_per_cycle=float(geometric[-1] / cycles),
                               ratio=float(geometric[-1] / cycles / w),
                               per_cycle_phases=per_cycle))
    return rows
