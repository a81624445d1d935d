"""Figure presets, parameter sweeps and the oracle validation runner.

Trajectories are computed from the closed-form propagator with the
sector closed form for negativity (tested to match the eigensolver
route); the validation runner drives the RK4 oracle against the closed
form over a parameter grid.

Units note: everything numeric is in cavity units (kappa = 1, time in
1/kappa).  The fig presets quote their dipole-dipole values the way the
source figures label them, in units of gamma0; the stored numeric
omega_dd is label_value * gamma0.  Curve labels keep the quoted numbers.
"""

from __future__ import annotations

import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence, TextIO

import numpy as np

from .model import (
    InitialState,
    ModelError,
    ModelParams,
    coupling_regime,
    named_initial_state,
    validate,
)
from .negativity import negativity_closed_form
from .oracle import StepTooLargeError, cross_validate
from .propagator import (
    NoSteadyStateError,
    amplitude_grid,
    d_pm,
    steady_amplitudes,
)

__all__ = [
    "Trajectory",
    "SweepSpec",
    "CellResult",
    "SweepResult",
    "ValidationCell",
    "UnknownPresetError",
    "PRESET_NAMES",
    "PRESET_T_END",
    "DEFAULT_POINTS",
    "DEFAULT_VALIDATION_TOL",
    "compute_trajectory",
    "run_preset",
    "run_sweep",
    "run_validation",
    "steady_report",
    "steady_convergence_time",
    "write_csv",
    "write_sweep_csv",
    "write_validation_csv",
    "write_steady_csv",
]

PRESET_T_END = 50.0
DEFAULT_POINTS = 2001
DEFAULT_VALIDATION_TOL = 1e-5
# Tail-vs-steady sanity gate used by the reports.
TAIL_GATE = 1e-2


class UnknownPresetError(KeyError):
    """Requested preset name is not in PRESET_NAMES."""


@dataclass(frozen=True)
class Trajectory:
    """Negativity and populations of one curve on a shared time grid."""

    label: str
    params: ModelParams
    times: np.ndarray
    negativity: np.ndarray
    ground_population: np.ndarray
    abs2_c1a: np.ndarray
    abs2_c1b: np.ndarray
    abs2_c2a: np.ndarray
    abs2_c2b: np.ndarray


def compute_trajectory(
    params: ModelParams,
    init: InitialState,
    t_end: float,
    n_points: int = DEFAULT_POINTS,
    label: str = "",
) -> Trajectory:
    """Evaluate one closed-form trajectory on a uniform grid."""
    validate(params, init)
    if t_end <= 0.0:
        raise ValueError(f"t_end must be > 0, got {t_end}")
    if n_points < 2:
        raise ValueError(f"need at least 2 grid points, got {n_points}")
    times = np.linspace(0.0, t_end, n_points)
    amps = amplitude_grid(params, init, times)
    abs2 = np.abs(amps) ** 2
    s1 = abs2[0] + abs2[1]
    s2 = abs2[2] + abs2[3]
    p = np.clip(1.0 - s1 - s2, 0.0, 1.0)
    neg = np.sqrt(p * p + 4.0 * s1 * s2) - p
    return Trajectory(
        label=label,
        params=params,
        times=times,
        negativity=neg,
        ground_population=p,
        abs2_c1a=abs2[0],
        abs2_c1b=abs2[1],
        abs2_c2a=abs2[2],
        abs2_c2b=abs2[3],
    )


# ---------------------------------------------------------------------------
# Figure presets

_THETA_CURVES = (("theta=0", 0.0), ("theta=0.5", 0.5), ("theta=0.9", 0.9),
                 ("theta=1", 1.0))
_OMEGA_CURVES = (("omega=0", 0.0), ("omega=3", 3.0), ("omega=6", 6.0),
                 ("omega=12", 12.0))

# family -> (init name, quoted omega for the theta sweep)
_FAMILIES = {
    "fig2": ("maximal", 0.0),
    "fig3": ("partial", 0.0),
    "fig4": ("product", 0.0),
    "fig5": ("maximal", 12.0),
    "fig6": ("partial", 12.0),
    "fig7": ("product", 12.0),
}
_PANEL_GAMMA0 = {"a": 0.1, "b": 10.0}

PRESET_NAMES = tuple(
    f"fig{n}{panel}" for n in range(2, 9) for panel in ("a", "b")
)


def _preset_cells(name: str):
    """(init, [(label, ModelParams)]) for a preset name."""
    family, panel = name[:-1], name[-1:]
    if name not in PRESET_NAMES or panel not in _PANEL_GAMMA0:
        raise UnknownPresetError(
            f"unknown preset {name!r}; expected one of {PRESET_NAMES}"
        )
    gamma0 = _PANEL_GAMMA0[panel]
    if family == "fig8":
        init_name = "product"
        curves = [
            (label, ModelParams(gamma0=gamma0, theta=0.0,
                                omega_dd=quoted * gamma0))
            for label, quoted in _OMEGA_CURVES
        ]
    else:
        init_name, quoted_omega = _FAMILIES[family]
        curves = [
            (label, ModelParams(gamma0=gamma0, theta=theta,
                                omega_dd=quoted_omega * gamma0))
            for label, theta in _THETA_CURVES
        ]
    return named_initial_state(init_name), curves


def run_preset(name: str, n_points: int = DEFAULT_POINTS) -> list[Trajectory]:
    """All curves of one figure preset (fig2a ... fig8b)."""
    init, curves = _preset_cells(name)
    return [
        compute_trajectory(params, init, PRESET_T_END, n_points, label=label)
        for label, params in curves
    ]


# ---------------------------------------------------------------------------
# Grid sweeps

@dataclass(frozen=True)
class SweepSpec:
    """Cartesian sweep: one cell per (gamma0, theta, omega) combination."""

    gamma0s: tuple[float, ...]
    thetas: tuple[float, ...]
    omegas: tuple[float, ...]
    init: InitialState
    init_label: str = "custom"
    t_end: float = PRESET_T_END
    n_points: int = DEFAULT_POINTS
    kappa: float = 1.0


@dataclass(frozen=True)
class CellResult:
    """One sweep cell; ``error`` set means the cell failed validation."""

    params: ModelParams
    trajectory: Trajectory | None
    steady_negativity: float | None
    tail_gap: float | None
    error: str | None
    note: str | None


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    cells: list[CellResult]


def _run_cell(params: ModelParams, spec: SweepSpec) -> CellResult:
    try:
        validate(params, spec.init)
    except ModelError as exc:
        return CellResult(params, None, None, None,
                          f"{type(exc).__name__}: {exc}", None)
    traj = compute_trajectory(params, spec.init, spec.t_end, spec.n_points,
                              label=spec.init_label)
    steady = None
    tail_gap = None
    note = None
    try:
        steady = negativity_closed_form(steady_amplitudes(params, spec.init))
    except NoSteadyStateError as exc:
        note = f"NoSteadyState: {exc}"
    if steady is not None:
        tail = traj.negativity[-max(1, spec.n_points // 20):]
        tail_gap = float(np.max(np.abs(tail - steady)))
        if tail_gap > TAIL_GATE:
            note = (
                f"tail gap {tail_gap:.3g} exceeds {TAIL_GATE:g}: "
                f"not steady by t_end={spec.t_end:g}"
            )
    return CellResult(params, traj, steady, tail_gap, None, note)


def run_sweep(spec: SweepSpec, jobs: int = 1) -> SweepResult:
    """Run every grid cell; cell order is the deterministic product order
    gamma0-major, omega-minor, independent of ``jobs``.

    Validation errors are recorded per cell and do not abort the rest.
    """
    grid = [
        ModelParams(gamma0=g, theta=th, kappa=spec.kappa, omega_dd=om)
        for g, th, om in product(spec.gamma0s, spec.thetas, spec.omegas)
    ]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            cells = list(pool.map(lambda p: _run_cell(p, spec), grid))
    else:
        cells = [_run_cell(p, spec) for p in grid]
    return SweepResult(spec=spec, cells=cells)


# ---------------------------------------------------------------------------
# Oracle validation runner

_DEFAULT_GRID_GAMMA0 = (0.1, 10.0)
_DEFAULT_GRID_THETA = (0.0, 0.5, 0.9, 1.0)
_DEFAULT_GRID_OMEGA = (0.0, 6.0, 12.0)


@dataclass(frozen=True)
class ValidationCell:
    params: ModelParams
    max_abs_error: float | None
    passed: bool
    error: str | None


def run_validation(
    gamma0s: Sequence[float] = _DEFAULT_GRID_GAMMA0,
    thetas: Sequence[float] = _DEFAULT_GRID_THETA,
    omegas: Sequence[float] = _DEFAULT_GRID_OMEGA,
    init: InitialState | None = None,
    t_end: float = 10.0,
    dt: float = 1e-3,
    tol: float = DEFAULT_VALIDATION_TOL,
    jobs: int = 1,
) -> list[ValidationCell]:
    """Cross-validate closed form vs RK4 oracle over a parameter grid.

    The default 24-cell grid covers both coupling regimes, the full SGI
    range and three dipole-dipole strengths, with the partially entangled
    state (it feeds every term of the propagator).  Per-cell failures
    (including StepTooLargeError for a coarse dt) are reported, not raised.
    """
    if init is None:
        init = named_initial_state("partial")
    grid = [
        ModelParams(gamma0=g, theta=th, omega_dd=om)
        for g, th, om in product(gamma0s, thetas, omegas)
    ]

    def run(params: ModelParams) -> ValidationCell:
        try:
            validate(params, init)
            err = cross_validate(params, init, t_end, dt)
        except (ModelError, StepTooLargeError) as exc:
            return ValidationCell(params, None, False,
                                  f"{type(exc).__name__}: {exc}")
        return ValidationCell(params, err, err < tol, None)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run, grid))
    return [run(p) for p in grid]


# ---------------------------------------------------------------------------
# Steady-state report

def steady_convergence_time(params: ModelParams) -> float:
    """Time by which both decaying branches are down to ~1e-6.

    Decay rates are (kappa - Re D+-)/2; a branch with zero rate is the
    decoherence-free survivor and already part of the steady state.
    """
    rates = []
    for branch in (+1, -1):
        rate = 0.5 * (params.kappa - d_pm(params, branch).real)
        if rate > 1e-30:
            rates.append(rate)
    if not rates:
        raise NoSteadyStateError("no decaying branch for these parameters")
    return 14.0 / min(rates)


def steady_report(params: ModelParams, init: InitialState,
                  init_label: str = "custom") -> dict:
    """Steady negativity and populations, with a trajectory sanity gate.

    The long-time amplitudes come from the closed-form limit; the gate
    evaluates the analytic trajectory near the predicted convergence time
    and reports the residual gap (should sit well under 1e-2).
    """
    validate(params, init)
    amps = steady_amplitudes(params, init)
    neg = negativity_closed_form(amps)
    t_conv = steady_convergence_time(params)
    times = np.linspace(0.95 * t_conv, t_conv, 32)
    tail_amps = amplitude_grid(params, init, times)
    abs2 = np.abs(tail_amps) ** 2
    s1 = abs2[0] + abs2[1]
    s2 = abs2[2] + abs2[3]
    p = np.clip(1.0 - s1 - s2, 0.0, 1.0)
    tail_neg = np.sqrt(p * p + 4.0 * s1 * s2) - p
    gap = float(np.max(np.abs(tail_neg - neg)))
    return {
        "gamma0": params.gamma0,
        "theta": params.theta,
        "omega": params.omega_dd,
        "init": init_label,
        "regime": coupling_regime(params),
        "negativity": neg,
        "p": amps.ground_population,
        "abs2_c1a": abs(amps.c1a) ** 2,
        "abs2_c1b": abs(amps.c1b) ** 2,
        "abs2_c2a": abs(amps.c2a) ** 2,
        "abs2_c2b": abs(amps.c2b) ** 2,
        "tail_gap": gap,
        "tail_ok": gap <= TAIL_GATE,
    }


# ---------------------------------------------------------------------------
# CSV emission (deterministic bytes: fixed header, \n endings, %.12g floats)

def _fmt(x: float) -> str:
    return format(float(x) + 0.0, ".12g")


def write_csv(trajectories: Iterable[Trajectory], stream: TextIO) -> None:
    """Preset layout: one row per (curve, time point)."""
    stream.write(
        "t,curve_label,negativity,p,abs2_c1a,abs2_c1b,abs2_c2a,abs2_c2b\n"
    )
    for traj in trajectories:
        for i in range(len(traj.times)):
            stream.write(
                ",".join(
                    (
                        _fmt(traj.times[i]),
                        traj.label,
                        _fmt(traj.negativity[i]),
                        _fmt(traj.ground_population[i]),
                        _fmt(traj.abs2_c1a[i]),
                        _fmt(traj.abs2_c1b[i]),
                        _fmt(traj.abs2_c2a[i]),
                        _fmt(traj.abs2_c2b[i]),
                    )
                )
                + "\n"
            )


def write_sweep_csv(result: SweepResult, stream: TextIO) -> None:
    """Sweep layout: cell identity columns plus the steady value."""
    stream.write(
        "t,gamma0,theta,omega,negativity,p,"
        "abs2_c1a,abs2_c1b,abs2_c2a,abs2_c2b,steady_negativity\n"
    )
    for cell in result.cells:
        if cell.trajectory is None:
            continue
        traj = cell.trajectory
        prefix = (
            _fmt(cell.params.gamma0),
            _fmt(cell.params.theta),
            _fmt(cell.params.omega_dd),
        )
        steady = "" if cell.steady_negativity is None else _fmt(
            cell.steady_negativity
        )
        for i in range(len(traj.times)):
            stream.write(
                ",".join(
                    (
                        _fmt(traj.times[i]),
                        *prefix,
                        _fmt(traj.negativity[i]),
                        _fmt(traj.ground_population[i]),
                        _fmt(traj.abs2_c1a[i]),
                        _fmt(traj.abs2_c1b[i]),
                        _fmt(traj.abs2_c2a[i]),
                        _fmt(traj.abs2_c2b[i]),
                        steady,
                    )
                )
                + "\n"
            )


def write_validation_csv(cells: Iterable[ValidationCell],
                         stream: TextIO) -> None:
    stream.write("gamma0,theta,omega,max_abs_error,status\n")
    for cell in cells:
        err = "" if cell.max_abs_error is None else _fmt(cell.max_abs_error)
        status = "ok" if cell.passed else (cell.error or "tolerance exceeded")
        stream.write(
            ",".join(
                (
                    _fmt(cell.params.gamma0),
                    _fmt(cell.params.theta),
                    _fmt(cell.params.omega_dd),
                    err,
                    status.replace(",", ";"),
                )
            )
            + "\n"
        )


def write_steady_csv(rows: Iterable[dict], stream: TextIO) -> None:
    cols = (
        "gamma0", "theta", "omega", "init", "regime", "negativity", "p",
        "abs2_c1a", "abs2_c1b", "abs2_c2a", "abs2_c2b",
    )
    stream.write(",".join(cols) + "\n")
    for row in rows:
        stream.write(
            ",".join(
                str(row[c]) if isinstance(row[c], str) else _fmt(row[c])
                for c in cols
            )
            + "\n"
        )


def report_cell_issues(result: SweepResult, stream: TextIO | None = None) -> int:
    """Print per-cell errors/notes; returns the number of failed cells.

    The stream defaults to whatever ``sys.stderr`` is at call time, so
    runtime redirection is honored.
    """
    if stream is None:
        stream = sys.stderr
    failures = 0
    for cell in result.cells:
        tag = (
            f"gamma0={cell.params.gamma0:g} theta={cell.params.theta:g} "
            f"omega={cell.params.omega_dd:g}"
        )
        if cell.error is not None:
            failures += 1
            stream.write(f"cell {tag}: ERROR {cell.error}\n")
        elif cell.note is not None:
            stream.write(f"cell {tag}: note: {cell.note}\n")
    return failures
