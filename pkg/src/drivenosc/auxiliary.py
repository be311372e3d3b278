"""Auxiliary functions eta(t), Delta(t) that parametrize the dynamical invariant.

For one driven axis with frequency omega and drive c(t), the invariant
I(t) = alpha*n_hat + eta(t)*a_dag + conj(eta(t))*a + Delta(t) satisfies the
Liouville condition iff

    eta'   = i*(alpha*c(t) - omega*eta)
    Delta' = i*(conj(eta) - eta)*c(t)        (real-valued)

Delta(0) = |eta(0)|^2/alpha is adopted so that Delta == |eta|^2/alpha holds
identically, which makes I a displaced number operator with spectrum
{alpha*n}.

Two initial-condition conventions are supported for each axis:

  * "identity-start": eta(0) = 0, so the displacement that diagonalizes I is
    the identity at t = 0 and the exact state starts in a bare Fock state.
  * "homogeneous-free": eta is the pure steady-state response with no
    transient at the oscillator frequency; beta = eta/alpha then traces a
    closed ellipse once per drive period.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridError, ResonanceError
from .params import DriveAxis, OscillatorParams, axis_frequency, drive_amplitude, drive_value

EPS_RESONANCE = 1e-6

IC_IDENTITY_START = "identity-start"
IC_HOMOGENEOUS_FREE = "homogeneous-free"
IC_CONVENTIONS = (IC_IDENTITY_START, IC_HOMOGENEOUS_FREE)

# target sub-step, scaled by the fastest frequency, for the drive quadrature
_QUAD_SUBSTEP = 0.002


@dataclass(frozen=True)
class AuxiliaryState:
    """Snapshot of the invariant coefficients at one instant."""

    eta: complex
    delta: float


@dataclass(frozen=True)
class ClosedFormCoeffs:
    """Coefficients of the exact x-axis solution.

    eta(t) = homogeneous_amp * exp(-i*omega1*t)
             + particular_scale * (omega1*cos(Omega*t) - i*Omega*sin(Omega*t))

    homogeneous_amp = -particular_scale*omega1 cancels the transient at t = 0.
    """

    homogeneous_amp: complex
    particular_scale: float


def _check_resonance(params: OscillatorParams, omega: float):
    gap = abs(omega * omega - params.Omega * params.Omega)
    if gap <= EPS_RESONANCE * omega * omega:
        raise ResonanceError(
            f"drive frequency Omega={params.Omega} too close to omega={omega}; "
            "the closed form diverges, use the numeric path")


def closed_form_coeffs(params: OscillatorParams) -> ClosedFormCoeffs:
    """Closed-form coefficients for the x axis; raises ResonanceError near Omega=omega1."""
    w = params.omega1
    _check_resonance(params, w)
    scale = params.alpha * drive_amplitude(params, DriveAxis.X) / (w * w - params.Omega ** 2)
    return ClosedFormCoeffs(homogeneous_amp=-scale * w, particular_scale=scale)


def steady_state_eta(params: OscillatorParams, axis: DriveAxis, t):
    """Pure driven response with no homogeneous transient, either axis.

    x axis:  K * (omega1*cos(Omega*t) - i*Omega*sin(Omega*t))
    y axis:  K * (omega2*sin(Omega*t) + i*Omega*cos(Omega*t))

    with K = alpha*c0/(omega^2 - Omega^2).  Raises ResonanceError when the
    denominator is within EPS_RESONANCE (relative) of zero.
    """
    w = axis_frequency(params, axis)
    _check_resonance(params, w)
    k = params.alpha * drive_amplitude(params, axis) / (w * w - params.Omega ** 2)
    wt = params.Omega * np.asarray(t)
    if axis is DriveAxis.X:
        return k * (w * np.cos(wt) - 1j * params.Omega * np.sin(wt))
    return k * (w * np.sin(wt) + 1j * params.Omega * np.cos(wt))


def closed_form_eta(params: OscillatorParams, t):
    """Exact x-axis eta(t) with eta(0) = 0.  Scalar or array t."""
    coeffs = closed_form_coeffs(params)
    return (coeffs.homogeneous_amp * np.exp(-1j * params.omega1 * np.asarray(t))
            + steady_state_eta(params, DriveAxis.X, t))


def closed_form_eta_star(params: OscillatorParams, t):
    """The independently-written conjugate expression; equals conj(closed_form_eta)."""
    coeffs = closed_form_coeffs(params)
    w, W = params.omega1, params.Omega
    return (np.conj(coeffs.homogeneous_amp) * np.exp(1j * w * np.asarray(t))
            + coeffs.particular_scale * (w * np.cos(W * np.asarray(t))
                                         + 1j * W * np.sin(W * np.asarray(t))))


def aux_rhs(params: OscillatorParams, axis: DriveAxis, state, t: float):
    """Right-hand side of the auxiliary system for (eta, Delta).

    state is a length-2 complex sequence (eta, Delta); Delta rides along as a
    complex number whose imaginary part stays at zero.
    """
    eta = state[0]
    omega = axis_frequency(params, axis)
    c = drive_value(params, axis, t)
    eta_dot = 1j * (params.alpha * c - omega * eta)
    delta_dot = 1j * (np.conj(eta) - eta) * c
    return np.array([eta_dot, delta_dot], dtype=np.complex128)


def _validate_grid(t_grid: np.ndarray):
    if t_grid.ndim != 1 or t_grid.size < 1:
        raise GridError("time grid must be a non-empty 1-D array")
    if t_grid[0] != 0.0:
        raise GridError(f"time grid must start at 0, got {t_grid[0]}")
    if t_grid.size > 1 and not np.all(np.diff(t_grid) > 0):
        raise GridError("time grid must be strictly increasing")


def _panel_quadrature(params, axis, omega, a, b):
    """Composite-Simpson value of exp(i*omega*s)*c(s) over [a, b]."""
    scale = max(omega, params.Omega, 1.0)
    n_sub = max(2, int(math.ceil((b - a) * scale / _QUAD_SUBSTEP)))
    n_sub += n_sub % 2
    s = np.linspace(a, b, n_sub + 1)
    f = np.exp(1j * omega * s) * drive_value(params, axis, s)
    w = np.ones(n_sub + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return (b - a) / (3.0 * n_sub) * np.dot(w, f)


def general_eta(params: OscillatorParams, axis: DriveAxis, eta0: complex, t_grid) -> np.ndarray:
    """Quadrature solution of eta' = i*(alpha*c - omega*eta) on a time grid.

    Variation of parameters:
        eta(t) = exp(-i*omega*t) * (eta0 + i*alpha * int_0^t exp(i*omega*s) c(s) ds)
    with the integral done by composite Simpson on a refinement of each grid
    interval.  Works for any strictly increasing grid starting at 0.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    _validate_grid(t_grid)
    omega = axis_frequency(params, axis)

    increments = np.empty(t_grid.size, dtype=np.complex128)
    increments[0] = 0.0
    for k in range(1, t_grid.size):
        increments[k] = _panel_quadrature(params, axis, omega, t_grid[k - 1], t_grid[k])
    integral = np.cumsum(increments)
    return np.exp(-1j * omega * t_grid) * (eta0 + 1j * params.alpha * integral)


def eta_trajectory(params: OscillatorParams, axis: DriveAxis, t_grid,
                   ic: str = IC_IDENTITY_START, numeric: bool = False) -> np.ndarray:
    """eta(t) on a grid under the chosen initial-condition convention.

    The x axis uses the closed form unless numeric=True; the y axis always
    goes through the quadrature path (its drive has no printed closed form,
    only a steady-state response).
    """
    if ic not in IC_CONVENTIONS:
        raise ValueError(f"unknown convention {ic!r}, expected one of {IC_CONVENTIONS}")
    t_grid = np.asarray(t_grid, dtype=float)
    _validate_grid(t_grid)

    if ic == IC_HOMOGENEOUS_FREE and not numeric:
        return steady_state_eta(params, axis, t_grid)

    if ic == IC_HOMOGENEOUS_FREE:
        eta0 = complex(steady_state_eta(params, axis, 0.0))
    else:
        eta0 = 0.0 + 0.0j

    if axis is DriveAxis.X and not numeric:
        return closed_form_eta(params, t_grid)
    return general_eta(params, axis, eta0, t_grid)


def uses_quadrature(axis: DriveAxis, ic: str, numeric: bool) -> bool:
    """True when eta(t) must come from the quadrature path rather than a formula."""
    return numeric or (axis is DriveAxis.Y and ic == IC_IDENTITY_START)


def eta_at(params: OscillatorParams, axis: DriveAxis, t: float,
           ic: str = IC_IDENTITY_START, numeric: bool = False) -> complex:
    """eta at a single time under the chosen convention."""
    if ic not in IC_CONVENTIONS:
        raise ValueError(f"unknown convention {ic!r}, expected one of {IC_CONVENTIONS}")
    if not uses_quadrature(axis, ic, numeric):
        if ic == IC_HOMOGENEOUS_FREE:
            return complex(steady_state_eta(params, axis, t))
        return complex(closed_form_eta(params, t))
    grid = np.array([0.0]) if t == 0.0 else np.array([0.0, float(t)])
    return complex(eta_trajectory(params, axis, grid, ic=ic, numeric=numeric)[-1])


def beta_of_eta(eta, alpha: float):
    """Displacement parameter beta = eta/alpha."""
    return eta / alpha


def delta_of_eta(eta, alpha: float):
    """Invariant offset Delta = |eta|^2/alpha fixed by the Delta(0) convention."""
    return (eta.real ** 2 + eta.imag ** 2) / alpha


def beta_dot(params: OscillatorParams, axis: DriveAxis, beta, t):
    """Exact time derivative beta' = i*(c(t) - omega*beta) along solutions."""
    omega = axis_frequency(params, axis)
    return 1j * (drive_value(params, axis, t) - omega * beta)
