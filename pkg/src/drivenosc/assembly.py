"""Two-axis composite state and laboratory-frame expectation values.

The full wavefunction factorizes into independent x and y pieces times a
global factor exp(-i*(omega1+omega2)*t/2) from the two zero-point energies.
The factored form is kept as is; nothing here ever builds the N^2 tensor
product.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .auxiliary import IC_IDENTITY_START
from .fock import FockVector, analytic_state, expect_a
from .params import DriveAxis, OscillatorParams


@dataclass(frozen=True)
class CompositeState:
    """Factored two-axis state; global_phase is -(omega1+omega2)*t/2 and the
    overall factor on the product state is exp(i*global_phase)."""

    x_state: FockVector
    y_state: FockVector
    global_phase: float


def full_state(params: OscillatorParams, n1: int, n2: int, t: float, N: int,
               ic: str = IC_IDENTITY_START, numeric: bool = False) -> CompositeState:
    """Exact composite solution from Fock indices (n1, n2) at time t."""
    x = analytic_state(params, DriveAxis.X, n1, t, N, ic=ic, numeric=numeric)
    y = analytic_state(params, DriveAxis.Y, n2, t, N, ic=ic, numeric=numeric)
    return CompositeState(x_state=x, y_state=y,
                          global_phase=-0.5 * (params.omega1 + params.omega2) * t)


def dipole_expectation(state: CompositeState, params: OscillatorParams):
    """(<x>, <y>) of the composite state.

    Positions follow from x = (a + a_dag)/sqrt(2*mu*omega1) and likewise for
    y, so each component is 2*Re<a>/sqrt(2*mu*omega).
    """
    ex = 2.0 * expect_a(state.x_state).real / math.sqrt(2.0 * params.mu * params.omega1)
    ey = 2.0 * expect_a(state.y_state).real / math.sqrt(2.0 * params.mu * params.omega2)
    return ex, ey
