"""Fixed-step classical RK4 for small complex systems.

Deliberately plain: a deterministic, endpoint-exact integrator that serves as
an independent cross-check for the closed-form results elsewhere in the
package.  No adaptivity, no dense output tricks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import NonFiniteError


@dataclass(frozen=True)
class OdeProblem:
    """First-order complex IVP y' = rhs(t, y) on [t0, t1].

    dt is a requested step; the actual step is (t1 - t0)/n_steps with
    n_steps = round((t1 - t0)/dt), so the trajectory always lands on t1
    exactly.
    """

    dimension: int
    rhs: Callable[[float, np.ndarray], np.ndarray]
    y0: np.ndarray
    t0: float
    t1: float
    dt: float

    def __post_init__(self):
        y0 = np.asarray(self.y0, dtype=np.complex128)
        if y0.shape != (self.dimension,):
            raise ValueError(
                f"y0 has shape {y0.shape}, expected ({self.dimension},)")
        object.__setattr__(self, "y0", y0)
        if not (self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.n_steps < 1:
            raise ValueError(
                f"interval [{self.t0}, {self.t1}] with dt={self.dt} "
                "rounds to zero steps")

    @property
    def n_steps(self) -> int:
        return int(round((self.t1 - self.t0) / self.dt))


def integrate_rk4(problem: OdeProblem):
    """Integrate with classical RK4 at a fixed step.

    Returns (times, states): times has shape (n_steps+1,), states has shape
    (n_steps+1, dimension) and includes both endpoints.  Raises
    NonFiniteError as soon as any state component stops being finite.
    """
    n = problem.n_steps
    h = (problem.t1 - problem.t0) / n
    rhs = problem.rhs

    times = problem.t0 + h * np.arange(n + 1)
    times[-1] = problem.t1
    states = np.empty((n + 1, problem.dimension), dtype=np.complex128)
    states[0] = problem.y0

    y = problem.y0.copy()
    half = 0.5 * h
    # finiteness is checked explicitly below, so inf/nan arithmetic inside a
    # failing step should not also emit runtime warnings
    with np.errstate(invalid="ignore", over="ignore"):
        for k in range(n):
            t = times[k]
            k1 = rhs(t, y)
            k2 = rhs(t + half, y + half * k1)
            k3 = rhs(t + half, y + half * k2)
            k4 = rhs(t + h, y + h * k3)
            y = y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)
            if not np.all(np.isfinite(y.view(np.float64))):
                raise NonFiniteError(f"non-finite state at t={times[k + 1]:.6g}")
            states[k + 1] = y
    return times, states
