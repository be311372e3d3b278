"""Physical parameters and the rotating-field drive terms.

The system is a charge Q of mass mu bound harmonically (frequencies omega1,
omega2 along the two Cartesian axes) in an electric field of magnitude E that
rotates in the plane at angular frequency Omega.  In ladder-operator form each
axis sees a linear drive

    x axis:  c(t) = Q*E*sqrt(1/(2*mu*omega1)) * cos(Omega*t)
    y axis:  s(t) = Q*E*sqrt(1/(2*mu*omega2)) * sin(Omega*t)

with hbar = 1 throughout.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class DriveAxis(enum.Enum):
    """Which axis of the rotating drive: X carries cosine, Y carries sine."""

    X = "x"
    Y = "y"


@dataclass(frozen=True)
class OscillatorParams:
    """Static parameters of the driven oscillator.

    alpha is the overall scale of the quadratic invariant; physical results
    (beta, phases) do not depend on it.
    """

    mu: float
    omega1: float
    omega2: float
    Omega: float
    Q: float
    E: float
    alpha: float = 1.0

    def __post_init__(self):
        for name in ("mu", "omega1", "omega2", "Omega", "Q", "E", "alpha"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")
        if self.omega1 <= 0 or self.omega2 <= 0:
            raise ValueError("oscillator frequencies must be positive")
        if self.Omega < 0:
            raise ValueError(f"Omega must be non-negative, got {self.Omega}")
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")


def axis_frequency(params: OscillatorParams, axis: DriveAxis) -> float:
    """Oscillator frequency seen by the given axis."""
    return params.omega1 if axis is DriveAxis.X else params.omega2


def drive_amplitude(params: OscillatorParams, axis: DriveAxis) -> float:
    """Peak linear-drive coefficient Q*E*sqrt(1/(2*mu*omega)) for the axis.

    Carries the sign of Q*E.
    """
    omega = axis_frequency(params, axis)
    return params.Q * params.E * math.sqrt(1.0 / (2.0 * params.mu * omega))


def drive_value(params: OscillatorParams, axis: DriveAxis, t):
    """Instantaneous drive coefficient; cosine envelope on X, sine on Y.

    Accepts scalar or array t.
    """
    c0 = drive_amplitude(params, axis)
    if axis is DriveAxis.X:
        return c0 * np.cos(params.Omega * t)
    return c0 * np.sin(params.Omega * t)
