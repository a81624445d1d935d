"""Independent numeric check of the closed-form propagator.

The cavity memory kernel is a single decaying exponential
f(tau) = (gamma0*kappa/2) * exp(-kappa*tau) (cross-atom kernel theta*f),
so the integro-differential amplitude equations reduce exactly to local
ODEs with one auxiliary accumulator per atom:

    d c_l^a / dt = -(gamma0*kappa/2) * (z_a + theta*z_b) - 2i*Omega*c_l^a
    d c_l^b / dt = -(gamma0*kappa/2) * (z_b + theta*z_a) - 2i*Omega*c_l^b
    d z_m  / dt  = -kappa*z_m + (c_1^m + c_2^m),        z_m(0) = 0

integrated with fixed-step classical RK4.  No Laplace transforms and no
branch propagators: an independent route to the same amplitudes.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import InitialState, ModelParams
from .propagator import amplitude_grid

__all__ = [
    "OracleState",
    "OracleTrajectory",
    "StepTooLargeError",
    "MAX_STEP_SCALE",
    "rhs",
    "integrate",
    "cross_validate",
]

# dt * max(kappa, gamma0, 2*Omega, 1) must stay below this; at 0.025
# rad/step RK4's global phase error over t ~ 10/kappa is below 1e-6.
MAX_STEP_SCALE = 0.025


class StepTooLargeError(ValueError):
    """dt exceeds the stability/accuracy guard for these parameters."""


@dataclass(frozen=True)
class OracleState:
    """Integrator state: four amplitudes, two accumulators, current time.

    ``rhs`` returns the same container holding time derivatives (its
    ``t`` field is dt/dt = 1).
    """

    c1a: complex
    c1b: complex
    c2a: complex
    c2b: complex
    z_a: complex
    z_b: complex
    t: float

    @classmethod
    def from_initial(cls, init: InitialState) -> "OracleState":
        return cls(init.c1a, init.c1b, init.c2a, init.c2b, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class OracleTrajectory:
    """RK4 output: times (n+1,) and amplitudes (n+1, 4) as (c1a, c1b, c2a, c2b)."""

    times: np.ndarray
    amplitudes: np.ndarray

    def state_at(self, i: int) -> np.ndarray:
        return self.amplitudes[i]


def rhs(state: OracleState, params: ModelParams) -> OracleState:
    """Time derivative of the reduced local system."""
    half_rate = 0.5 * params.gamma0 * params.kappa
    rot = 2j * params.omega_dd
    drive_a = -half_rate * (state.z_a + params.theta * state.z_b)
    drive_b = -half_rate * (state.z_b + params.theta * state.z_a)
    return OracleState(
        c1a=drive_a - rot * state.c1a,
        c1b=drive_b - rot * state.c1b,
        c2a=drive_a - rot * state.c2a,
        c2b=drive_b - rot * state.c2b,
        z_a=(state.c1a + state.c2a) - params.kappa * state.z_a,
        z_b=(state.c1b + state.c2b) - params.kappa * state.z_b,
        t=1.0,
    )


def _check_step(params: ModelParams, dt: float) -> None:
    if dt <= 0.0:
        raise StepTooLargeError(f"dt must be > 0, got {dt}")
    fastest = max(params.kappa, params.gamma0, 2.0 * params.omega_dd, 1.0)
    if dt * fastest > MAX_STEP_SCALE * (1.0 + 1e-12):
        raise StepTooLargeError(
            f"dt = {dt} too coarse: need dt <= {MAX_STEP_SCALE / fastest:.3e} "
            f"for these rates"
        )


def integrate(
    params: ModelParams, init: InitialState, t_end: float, dt: float = 1e-3
) -> OracleTrajectory:
    """Fixed-step RK4 from t = 0 to t_end, sampled at every step.

    t_end is taken as the nearest multiple of dt.  Raises
    StepTooLargeError when dt violates the guard
    dt * max(kappa, gamma0, 2*Omega, 1) <= MAX_STEP_SCALE.
    """
    _check_step(params, dt)
    n_steps = max(int(round(t_end / dt)), 0)

    half_rate = 0.5 * params.gamma0 * params.kappa
    theta = params.theta
    kappa = params.kappa
    rot = 2j * params.omega_dd

    def deriv(y):
        c1a, c1b, c2a, c2b, za, zb = y
        drive_a = -half_rate * (za + theta * zb)
        drive_b = -half_rate * (zb + theta * za)
        return (
            drive_a - rot * c1a,
            drive_b - rot * c1b,
            drive_a - rot * c2a,
            drive_b - rot * c2b,
            (c1a + c2a) - kappa * za,
            (c1b + c2b) - kappa * zb,
        )

    y = (
        complex(init.c1a),
        complex(init.c1b),
        complex(init.c2a),
        complex(init.c2b),
        0.0j,
        0.0j,
    )
    amps = np.empty((n_steps + 1, 4), dtype=complex)
    amps[0] = y[:4]
    sixth = dt / 6.0
    half = 0.5 * dt
    for step in range(n_steps):
        k1 = deriv(y)
        k2 = deriv(tuple(yi + half * ki for yi, ki in zip(y, k1)))
        k3 = deriv(tuple(yi + half * ki for yi, ki in zip(y, k2)))
        k4 = deriv(tuple(yi + dt * ki for yi, ki in zip(y, k3)))
        y = tuple(
            yi + sixth * (a + 2.0 * (b + c) + d)
            for yi, a, b, c, d in zip(y, k1, k2, k3, k4)
        )
        amps[step + 1] = y[:4]
    times = dt * np.arange(n_steps + 1)
    return OracleTrajectory(times=times, amplitudes=amps)


def cross_validate(
    params: ModelParams, init: InitialState, t_end: float, dt: float = 1e-3
) -> float:
    """Max |closed form - RK4| over all four amplitudes and all steps."""
    numeric = integrate(params, init, t_end, dt)
    analytic = amplitude_grid(params, init, numeric.times)
    return float(np.max(np.abs(analytic.T - numeric.amplitudes)))
