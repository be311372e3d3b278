"""Composite two-axis state."""
import math

import numpy as np
import pytest

from drivenosc import (DriveAxis, OscillatorParams, analytic_state,
                       beta_of_eta, dipole_expectation, eta_at, fidelity,
                       full_state)


def test_factors_match_single_axis_states(ref_params):
    st = full_state(ref_params, 1, 0, 2.5, 64)
    x = analytic_state(ref_params, DriveAxis.X, 1, 2.5, 64)
    y = analytic_state(ref_params, DriveAxis.Y, 0, 2.5, 64)
    assert np.array_equal(st.x_state.amps, x.amps)
    assert np.array_equal(st.y_state.amps, y.amps)


def test_global_phase_is_zero_point_sum():
    p = OscillatorParams(mu=1.0, omega1=1.0, omega2=2.0, Omega=0.3, Q=1.0, E=0.2)
    st = full_state(p, 0, 0, 4.0, 64)
    assert st.global_phase == pytest.approx(-0.5 * 3.0 * 4.0, rel=1e-15)


def test_dipole_tracks_displacements(ref_params):
    t = 3.2
    st = full_state(ref_params, 0, 0, t, 64)
    bx = beta_of_eta(eta_at(ref_params, DriveAxis.X, t), ref_params.alpha)
    by = beta_of_eta(eta_at(ref_params, DriveAxis.Y, t), ref_params.alpha)
    ex, ey = dipole_expectation(st, ref_params)
    s = math.sqrt(2.0 * ref_params.mu * ref_params.omega1)
    assert ex == pytest.approx(-2.0 * bx.real / s, abs=1e-9)
    assert ey == pytest.approx(-2.0 * by.real / s, abs=1e-9)


def test_undriven_state_stays_put():
    p = OscillatorParams(mu=1.0, omega1=1.0, omega2=1.0, Omega=0.3, Q=1.0, E=0.0)
    st = full_state(p, 2, 1, 5.0, 32)
    from drivenosc import basis_state
    assert abs(fidelity(st.x_state, basis_state(32, 2))) == pytest.approx(1.0, abs=1e-12)
    assert abs(fidelity(st.y_state, basis_state(32, 1))) == pytest.approx(1.0, abs=1e-12)
    assert dipole_expectation(st, p) == (0.0, 0.0)
