"""Closed-form single-excitation propagator for the atom pair.

The damped cavity mode can be traced out exactly: each collective branch
(symmetric "+" / antisymmetric "-" combination of the two atoms) evolves
under a memoryful kernel whose Laplace transform is quadratic, so the
branch propagators are

    G+-(t) = exp(-(kappa + 2i*Omega) t / 2)
             * [cosh(D+- t/2) + (kappa - 2i*Omega)/D+- * sinh(D+- t/2)]

    D+-    = sqrt((kappa + 2i*Omega)^2
                  - 4*(2i*Omega*kappa + gamma0*kappa*(1 +- theta)))

with Omega the dipole-dipole shift.  The four excited amplitudes mix only
through the combinations below (q1, q2 carry the decaying branches, q3 the
pure dipole-dipole phase of the antisymmetric sector):

    c1a(t) = q1*(c1a0 + c2a0) + q2*(c1b0 + c2b0) + q3*(c1a0 - c2a0)
    c2a(t) = q1*(c2a0 + c1a0) + q2*(c2b0 + c1b0) + q3*(c2a0 - c1a0)
    c1b(t) = q2*(c1a0 + c2a0) + q1*(c1b0 + c2b0) + q3*(c1b0 - c2b0)
    c2b(t) = q2*(c2a0 + c1a0) + q1*(c2b0 + c1b0) + q3*(c2b0 - c1b0)

    q1 = (G+ + G-)/4,  q2 = (G+ - G-)/4,  q3 = exp(-2i*Omega*t)/2

At |theta| = 1 one branch becomes decoherence-free: D- collapses onto
kappa - 2i*Omega and |G-| = 1 for all t.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import AmplitudeSet, InitialState, ModelParams

__all__ = [
    "PropagatorCoeffs",
    "NoSteadyStateError",
    "d_pm",
    "g_pm",
    "q_coeffs",
    "propagate",
    "amplitude_grid",
    "steady_amplitudes",
]

# Below this size (relative to kappa) the sinh/D ratio switches to its
# series limit; the two branches agree to ~1e-14 at the crossover.
_DEGENERATE_CUTOFF = 1e-8


class NoSteadyStateError(ValueError):
    """No long-time limit exists (nothing decays when gamma0 = 0)."""


@dataclass(frozen=True)
class PropagatorCoeffs:
    """Mixing coefficients (q1, q2, q3) at one instant."""

    q1: complex
    q2: complex
    q3: complex


def d_pm(params: ModelParams, branch: int) -> complex:
    """Collective-branch root D+ (branch=+1) or D- (branch=-1).

    Principal square root: non-negative real part, and non-negative
    imaginary part when the real part vanishes.
    """
    if branch not in (+1, -1):
        raise ValueError(f"branch must be +1 or -1, got {branch!r}")
    kappa, omega = params.kappa, params.omega_dd
    mu = kappa + 2j * omega
    radicand = mu * mu - 4.0 * (
        2j * omega * kappa + params.gamma0 * kappa * (1.0 + branch * params.theta)
    )
    root = cmath.sqrt(radicand)
    if root.real < 0.0 or (root.real == 0.0 and root.imag < 0.0):
        root = -root
    return root


def g_pm(params: ModelParams, branch: int, t):
    """Branch propagator G+-(t); scalar or ndarray ``t`` (kappa units).

    Evaluated as a sum of two exponentials whose real parts are <= 0 for
    every valid parameter set, so large t cannot overflow:

        G = (1+r)/2 * exp((D - mu) t/2) + (1-r)/2 * exp(-(D + mu) t/2)

    with mu = kappa + 2i*Omega and r = (kappa - 2i*Omega)/D.  For
    |D| < 1e-8*kappa the bracket degenerates to its series limit
    1 + (kappa - 2i*Omega) t/2.
    """
    d = d_pm(params, branch)
    kappa, omega = params.kappa, params.omega_dd
    mu = kappa + 2j * omega
    nu = kappa - 2j * omega
    t = np.asarray(t)
    if abs(d) < _DEGENERATE_CUTOFF * kappa:
        out = np.exp(-0.5 * mu * t) * (1.0 + 0.5 * nu * t)
    else:
        r = nu / d
        out = 0.5 * (1.0 + r) * np.exp(0.5 * (d - mu) * t) + 0.5 * (
            1.0 - r
        ) * np.exp(-0.5 * (d + mu) * t)
    return out[()] if out.ndim == 0 else out


def q_coeffs(params: ModelParams, t: float) -> PropagatorCoeffs:
    """Mixing coefficients at time t (kappa units)."""
    gp = g_pm(params, +1, t)
    gm = g_pm(params, -1, t)
    q3 = 0.5 * np.exp(-2j * params.omega_dd * np.asarray(t))
    return PropagatorCoeffs(
        q1=0.25 * (gp + gm), q2=0.25 * (gp - gm), q3=q3[()] if q3.ndim == 0 else q3
    )


def _mix(init: InitialState, q1, q2, q3):
    """Apply the closed-form mixing to an initial state.

    Written so that swapping the two atoms permutes the outputs exactly
    (bit-for-bit): the symmetric part is shared and the antisymmetric
    differences are exact negations of each other in IEEE arithmetic.
    """
    sa = init.c1a + init.c2a
    sb = init.c1b + init.c2b
    sym_a = q1 * sa + q2 * sb
    sym_b = q2 * sa + q1 * sb
    c1a = sym_a + q3 * (init.c1a - init.c2a)
    c2a = sym_a + q3 * (init.c2a - init.c1a)
    c1b = sym_b + q3 * (init.c1b - init.c2b)
    c2b = sym_b + q3 * (init.c2b - init.c1b)
    return c1a, c1b, c2a, c2b


def propagate(params: ModelParams, init: InitialState, t: float) -> AmplitudeSet:
    """Amplitudes at time t >= 0 for the given initial state."""
    q = q_coeffs(params, t)
    c1a, c1b, c2a, c2b = _mix(init, q.q1, q.q2, q.q3)
    return AmplitudeSet(c1a=c1a, c1b=c1b, c2a=c2a, c2b=c2b, time=float(t))


def amplitude_grid(
    params: ModelParams, init: InitialState, times: np.ndarray
) -> np.ndarray:
    """Amplitudes on a whole time grid, shape (4, len(times)).

    Row order (c1a, c1b, c2a, c2b); one vectorized evaluation of the same
    closed form as :func:`propagate`.
    """
    times = np.asarray(times, dtype=float)
    gp = g_pm(params, +1, times)
    gm = g_pm(params, -1, times)
    q1 = 0.25 * (gp + gm)
    q2 = 0.25 * (gp - gm)
    q3 = 0.5 * np.exp(-2j * params.omega_dd * times)
    return np.stack(_mix(init, q1, q2, q3))


def steady_amplitudes(params: ModelParams, init: InitialState) -> AmplitudeSet:
    """Long-time amplitudes, with the surviving global phase stripped.

    For |theta| < 1 both collective branches decay and only the
    antisymmetric phase term survives; at theta = +1 (-1) the "-" ("+")
    branch is decoherence-free and keeps a finite weight.  The common
    residual phase exp(-2i*Omega*t) is removed, which leaves a concrete
    amplitude set (time = inf) whose negativity is the steady value.
    """
    if params.gamma0 <= 0.0:
        raise NoSteadyStateError(
            "gamma0 = 0 leaves both collective branches undamped"
        )
    if params.theta >= 1.0:
        q1, q2 = 0.25, -0.25
    elif params.theta <= -1.0:
        q1, q2 = 0.25, 0.25
    else:
        q1, q2 = 0.0, 0.0
    c1a, c1b, c2a, c2b = _mix(init, q1, q2, 0.5)
    return AmplitudeSet(c1a=c1a, c1b=c1b, c2a=c2a, c2b=c2b, time=math.inf)
