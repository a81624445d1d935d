"""Core types for a pair of V-type three-level atoms in a lossy cavity.

Each atom has ground level C and two near-degenerate excited levels A, B.
Both atoms couple to one damped cavity mode; within the single-excitation
sector the joint state is fixed by four excited-state amplitudes

    c1a, c1b : levels A, B of atom 1
    c2a, c2b : levels A, B of atom 2

plus the shared-ground population p = 1 - sum(|c|^2) (the photon has leaked
or sits in the cavity mode).  All rates are quoted in units of the cavity
linewidth ``kappa``; times are kappa*t.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "ModelParams",
    "InitialState",
    "AmplitudeSet",
    "ModelError",
    "NonFiniteInputError",
    "ThetaOutOfRangeError",
    "NotNormalizedError",
    "NonPositiveKappaError",
    "NegativeRateError",
    "NORM_TOL",
    "named_initial_state",
    "validate",
    "coupling_regime",
]

# Accepted slack on the excited-state norm of an initial state.
NORM_TOL = 1e-9


class ModelError(ValueError):
    """A model input violates one of its declared invariants."""


class NonFiniteInputError(ModelError):
    """A parameter or amplitude is NaN or infinite."""


class ThetaOutOfRangeError(ModelError):
    """SGI parameter outside [-1, 1]."""


class NotNormalizedError(ModelError):
    """Initial excited-state norm differs from 1 beyond NORM_TOL."""


class NonPositiveKappaError(ModelError):
    """Cavity linewidth must be > 0; it defines the rate unit."""


class NegativeRateError(ModelError):
    """gamma0 and omega_dd must be >= 0."""


@dataclass(frozen=True)
class ModelParams:
    """Physical parameters of the two-atom/cavity model.

    Parameters
    ----------
    gamma0 : float
        Atomic relaxation rate, in units of kappa.  >= 0.
    theta : float
        Spontaneously-generated-interference (SGI) parameter, the overlap
        of the two dipole moments of the V system.  In [-1, 1]; |theta|=1
        means parallel/antiparallel dipoles and opens a decoherence-free
        collective branch.
    kappa : float
        Cavity linewidth.  > 0; the default 1.0 makes it the rate unit.
    omega_dd : float
        Dipole-dipole shift between the two atoms, in units of kappa.  >= 0.
    """

    gamma0: float
    theta: float
    kappa: float = 1.0
    omega_dd: float = 0.0


@dataclass(frozen=True)
class InitialState:
    """Excited-sector amplitudes at t = 0; the excited norm must be 1."""

    c1a: complex = 0.0
    c1b: complex = 0.0
    c2a: complex = 0.0
    c2b: complex = 0.0

    @property
    def excited_norm(self) -> float:
        return (
            abs(self.c1a) ** 2
            + abs(self.c1b) ** 2
            + abs(self.c2a) ** 2
            + abs(self.c2b) ** 2
        )


@dataclass(frozen=True)
class AmplitudeSet:
    """Excited-sector amplitudes at one instant of the evolution."""

    c1a: complex
    c1b: complex
    c2a: complex
    c2b: complex
    time: float

    @classmethod
    def from_initial(cls, init: InitialState) -> "AmplitudeSet":
        return cls(init.c1a, init.c1b, init.c2a, init.c2b, 0.0)

    @property
    def excited_norm(self) -> float:
        return (
            abs(self.c1a) ** 2
            + abs(self.c1b) ** 2
            + abs(self.c2a) ** 2
            + abs(self.c2b) ** 2
        )

    @property
    def ground_population(self) -> float:
        """p = 1 - excited_norm, clamped into [0, 1] against roundoff."""
        return min(max(1.0 - self.excited_norm, 0.0), 1.0)


_SQRT1_2 = 1.0 / math.sqrt(2.0)

# name -> (c1a, c1b, c2a, c2b)
_NAMED_STATES = {
    # (|A2> + |B1>)/sqrt(2) x |ground cavity>; fully entangled atom pair.
    "maximal": (0.0, _SQRT1_2, _SQRT1_2, 0.0),
    # -sqrt(3)/2 |A2> + 1/2 |B1>; partially entangled.
    "partial": (0.0, 0.5, -math.sqrt(3.0) / 2.0, 0.0),
    # |B1>; separable, atom 1 excited.
    "product": (0.0, 1.0, 0.0, 0.0),
}


def named_initial_state(name: str) -> InitialState:
    """Return one of the named initial states: maximal, partial, product."""
    try:
        c1a, c1b, c2a, c2b = _NAMED_STATES[name]
    except KeyError:
        raise KeyError(
            f"unknown initial state {name!r}; expected one of "
            f"{sorted(_NAMED_STATES)}"
        ) from None
    return InitialState(c1a=c1a, c1b=c1b, c2a=c2a, c2b=c2b)


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


def validate(params: ModelParams, init: InitialState | None = None) -> None:
    """Check every declared invariant; raise the matching ModelError.

    Checks, in order: finiteness of all inputs, kappa > 0, |theta| <= 1,
    gamma0 >= 0 and omega_dd >= 0, and (when ``init`` is given)
    |excited_norm - 1| <= NORM_TOL.
    """
    for value in (params.gamma0, params.theta, params.kappa, params.omega_dd):
        if not math.isfinite(value):
            raise NonFiniteInputError(f"non-finite model parameter: {params}")
    if init is not None:
        for amp in (init.c1a, init.c1b, init.c2a, init.c2b):
            if not _finite(complex(amp)):
                raise NonFiniteInputError(f"non-finite amplitude in {init}")
    if params.kappa <= 0.0:
        raise NonPositiveKappaError(f"kappa must be > 0, got {params.kappa}")
    if abs(params.theta) > 1.0:
        raise ThetaOutOfRangeError(
            f"theta must lie in [-1, 1], got {params.theta}"
        )
    if params.gamma0 < 0.0:
        raise NegativeRateError(f"gamma0 must be >= 0, got {params.gamma0}")
    if params.omega_dd < 0.0:
        raise NegativeRateError(f"omega_dd must be >= 0, got {params.omega_dd}")
    if init is not None:
        norm = init.excited_norm
        if abs(norm - 1.0) > NORM_TOL:
            raise NotNormalizedError(
                f"excited-state norm is {norm!r}, expected 1 within {NORM_TOL}"
            )


def coupling_regime(params: ModelParams) -> str:
    """Classify gamma0/kappa against the threshold 1/2.

    Returns "weak" below 0.45, "strong" above 0.55 and "crossover" inside
    the 1/2 +- 10% band.
    """
    ratio = params.gamma0 / params.kappa
    if ratio < 0.45:
        return "weak"
    if ratio > 0.55:
        return "strong"
    return "crossover"
