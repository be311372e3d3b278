"""Truncated Fock-basis operators, the exact displaced state, and a
brute-force propagator used as an independent oracle.

All operators are dense numpy arrays on the first N number states.  The
truncation corrupts the last rows and columns of products and commutators, so
spectral and residual checks exclude a buffer of top basis states, and every
state-producing routine polices the tail mass of its output.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .auxiliary import (IC_IDENTITY_START, beta_of_eta, delta_of_eta, eta_at,
                        eta_trajectory, uses_quadrature)
from .errors import DimensionError, TruncationError
from .params import DriveAxis, OscillatorParams, axis_frequency, drive_amplitude, drive_value
from .phases import wavefunction_phase_at

TAIL_TOL = 1e-10
_STEP_SAFETY = 0.05


@dataclass
class FockVector:
    """State vector on the first dim number states."""

    dim: int
    amps: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.shape != (self.dim,):
            raise DimensionError(
                f"amplitudes have shape {amps.shape}, expected ({self.dim},)")
        self.amps = amps

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def tail_mass(self) -> float:
        """Probability sitting on the top two basis states."""
        return float(abs(self.amps[-1]) ** 2 + abs(self.amps[-2]) ** 2)


def basis_state(dim: int, n: int) -> FockVector:
    """|n> in a dim-dimensional truncation."""
    if not 0 <= n < dim:
        raise DimensionError(f"basis index {n} outside [0, {dim})")
    amps = np.zeros(dim, dtype=np.complex128)
    amps[n] = 1.0
    return FockVector(dim=dim, amps=amps)


def ladder_matrices(N: int):
    """(a, a_dag) on the first N number states; a[n-1, n] = sqrt(n)."""
    if N < 2:
        raise DimensionError(f"need at least 2 basis states, got {N}")
    a = np.diag(np.sqrt(np.arange(1.0, N)), k=1)
    return a, a.T.copy()


def hamiltonian_matrix(params: OscillatorParams, axis: DriveAxis, t: float, N: int) -> np.ndarray:
    """omega*n_hat + c(t)*(a_dag + a), real symmetric."""
    a, ad = ladder_matrices(N)
    omega = axis_frequency(params, axis)
    c = float(drive_value(params, axis, t))
    return omega * np.diag(np.arange(float(N))) + c * (a + ad)


def invariant_matrix_from(eta: complex, delta: float, alpha: float, N: int) -> np.ndarray:
    """alpha*n_hat + eta*a_dag + conj(eta)*a + delta from explicit coefficients."""
    a, ad = ladder_matrices(N)
    return (alpha * np.diag(np.arange(float(N))).astype(np.complex128)
            + eta * ad + np.conj(eta) * a + delta * np.eye(N))


def invariant_matrix(params: OscillatorParams, axis: DriveAxis, t: float, N: int,
                     ic: str = IC_IDENTITY_START, numeric: bool = False) -> np.ndarray:
    """Hermitian invariant I(t) with eta from the auxiliary solution."""
    eta = eta_at(params, axis, t, ic=ic, numeric=numeric)
    return invariant_matrix_from(eta, delta_of_eta(eta, params.alpha), params.alpha, N)


def liouville_residual(params: OscillatorParams, axis: DriveAxis, t: float, N: int,
                       h: float = 1e-5, ic: str = IC_IDENTITY_START,
                       numeric: bool = False, eta_factor: complex = 1.0) -> float:
    """Frobenius norm of dI/dt + (1/i)[I, H] on the top-left (N-4) block.

    The derivative is a centered difference with step h.  On the quadrature
    path all three eta evaluations share one grid so the quadrature error
    cancels in the difference.  eta_factor scales eta everywhere; values
    other than 1 break the defining equation and should push the residual
    orders of magnitude above the exact case.
    """
    if uses_quadrature(axis, ic, numeric):
        if t - h <= 0.0:
            raise ValueError(f"need t > h on the quadrature path, got t={t}, h={h}")
        grid = np.array([0.0, t - h, t, t + h])
        etas = eta_trajectory(params, axis, grid, ic=ic, numeric=numeric)[1:]
    else:
        etas = [eta_at(params, axis, s, ic=ic) for s in (t - h, t, t + h)]

    def build(eta) -> np.ndarray:
        eta = eta_factor * eta
        return invariant_matrix_from(eta, delta_of_eta(eta, params.alpha), params.alpha, N)

    d_dt = (build(etas[2]) - build(etas[0])) / (2.0 * h)
    i_mat = build(etas[1])
    h_mat = hamiltonian_matrix(params, axis, t, N).astype(np.complex128)
    residual = d_dt - 1j * (i_mat @ h_mat - h_mat @ i_mat)
    m = N - 4
    return float(np.linalg.norm(residual[:m, :m]))


def displacement_apply(gamma: complex, state: FockVector, tail_tol: float = TAIL_TOL) -> FockVector:
    """Apply exp(gamma*a_dag - conj(gamma)*a) by exact exponentiation.

    The generator is anti-Hermitian, so i*G is Hermitian and the exponential
    comes from its eigendecomposition.  Raises TruncationError when the
    displaced state leaks past the basis edge.
    """
    a, ad = ladder_matrices(state.dim)
    herm = 1j * (gamma * ad - np.conj(gamma) * a)
    vals, vecs = np.linalg.eigh(herm)
    out = vecs @ (np.exp(-1j * vals) * (vecs.conj().T @ state.amps))
    result = FockVector(dim=state.dim, amps=out)
    if result.tail_mass() > tail_tol:
        raise TruncationError(
            f"displacement by {gamma} leaks tail mass {result.tail_mass():.3e} "
            f"(> {tail_tol:g}); increase the basis size")
    return result


def analytic_state(params: OscillatorParams, axis: DriveAxis, n: int, t: float, N: int,
                   ic: str = IC_IDENTITY_START, numeric: bool = False) -> FockVector:
    """Exact solution exp(-i*(phi_dyn - phi_geom)) * D(-beta(t)) |n>.

    The exponent comes from wavefunction_phase_at; see the phases module for
    why it differs from the reported total by twice the geometric part.
    """
    if n > N // 4:
        raise DimensionError(
            f"Fock index {n} too close to the truncation edge N={N}")
    eta = eta_at(params, axis, t, ic=ic, numeric=numeric)
    beta = beta_of_eta(eta, params.alpha)
    phi = wavefunction_phase_at(params, axis, n, t, ic=ic, numeric=numeric)
    displaced = displacement_apply(-beta, basis_state(N, n))
    return FockVector(dim=N, amps=np.exp(-1j * phi) * displaced.amps)


def propagate_oracle(params: OscillatorParams, axis: DriveAxis, psi0: FockVector,
                     t1: float, dt: float, N: int | None = None,
                     t0: float = 0.0) -> FockVector:
    """Brute-force Schrodinger propagation on the truncated basis.

    Midpoint-exponential stepping: psi <- exp(-i*dt*H(t_mid)) psi, each
    exponential from a dense eigendecomposition of the real symmetric H.
    Second-order accurate in dt, deterministic, unconditionally unitary.
    """
    if N is None:
        N = psi0.dim
    if N != psi0.dim:
        raise DimensionError(f"psi0 has dim {psi0.dim}, expected {N}")
    omega = axis_frequency(params, axis)
    c0 = abs(drive_amplitude(params, axis))
    if dt * max(omega, params.Omega, c0 * math.sqrt(N)) > _STEP_SAFETY:
        raise ValueError(
            f"dt={dt} too coarse for omega={omega}, Omega={params.Omega}, "
            f"N={N}; reduce dt")
    if t1 == t0:
        return FockVector(dim=N, amps=psi0.amps.copy())

    n_steps = max(1, int(round((t1 - t0) / dt)))
    h = (t1 - t0) / n_steps
    a, ad = ladder_matrices(N)
    offdiag = a + ad
    diag = omega * np.arange(float(N))

    psi = psi0.amps.copy()
    for k in range(n_steps):
        t_mid = t0 + (k + 0.5) * h
        ham = np.diag(diag) + float(drive_value(params, axis, t_mid)) * offdiag
        vals, vecs = np.linalg.eigh(ham)
        psi = vecs @ (np.exp(-1j * h * vals) * (vecs.T @ psi))
        tail = abs(psi[-1]) ** 2 + abs(psi[-2]) ** 2
        if tail > TAIL_TOL:
            raise TruncationError(
                f"tail mass {tail:.3e} at t={t0 + (k + 1) * h:.4g} exceeds "
                f"{TAIL_TOL:g}; rerun with a larger basis than N={N}")
    return FockVector(dim=N, amps=psi)


def expect_a(state: FockVector) -> complex:
    """<a> = sum_m conj(psi_m) * sqrt(m+1) * psi_{m+1}."""
    amps = state.amps
    roots = np.sqrt(np.arange(1.0, state.dim))
    return complex(np.sum(np.conj(amps[:-1]) * roots * amps[1:]))


def fidelity(x: FockVector, y: FockVector) -> complex:
    """Complex overlap <x|y>; DimensionError when truncations differ."""
    if x.dim != y.dim:
        raise DimensionError(f"dimension mismatch: {x.dim} vs {y.dim}")
    return complex(np.vdot(x.amps, y.amps))
