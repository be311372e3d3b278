"""Exact solution of a charged harmonic oscillator driven by a rotating
electric field, built from a quadratic dynamical invariant, with independent
brute-force verification on a truncated number basis.
"""

from .assembly import CompositeState, dipole_expectation, full_state
from .auxiliary import (AuxiliaryState, ClosedFormCoeffs, IC_CONVENTIONS,
                        IC_HOMOGENEOUS_FREE, IC_IDENTITY_START, aux_rhs,
                        beta_dot, beta_of_eta, closed_form_coeffs,
                        closed_form_eta, closed_form_eta_star, delta_of_eta,
                        eta_at, eta_trajectory, general_eta, steady_state_eta,
                        uses_quadrature)
from .cli import RunConfig, TimeSeries, build_time_series, load_config, main
from .errors import (ConfigError, DimensionError, DrivenOscError, GridError,
                     IncommensurateError, NonFiniteError, OpenCurveError,
                     ResonanceError, TruncationError)
from .fock import (FockVector, analytic_state, basis_state, displacement_apply,
                   expect_a, fidelity, hamiltonian_matrix, invariant_matrix,
                   invariant_matrix_from, ladder_matrices, liouville_residual,
                   propagate_oracle)
from .integrators import OdeProblem, integrate_rk4
from .params import (DriveAxis, OscillatorParams, axis_frequency,
                     drive_amplitude, drive_value)
from .phases import (LoopSpec, PhaseBreakdown, SweepPoint, accumulate_phases,
                     accumulate_phase_arrays, berry_sweep, commensurate_period,
                     cumulative_simpson, ellipse_phase_per_cycle,
                     loop_signed_area, phase_integrand, phases_at,
                     total_phase_at, wavefunction_phase_at)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
