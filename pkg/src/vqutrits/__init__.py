"""Entanglement dynamics of two V-type atoms in a common dissipative cavity."""

from .model import (
    AmplitudeSet,
    InitialState,
    ModelParams,
    ModelError,
    NegativeRateError,
    NonFiniteInputError,
    NonPositiveKappaError,
    NotNormalizedError,
    ThetaOutOfRangeError,
    NORM_TOL,
    coupling_regime,
    named_initial_state,
    validate,
)
from .negativity import (
    BASIS_LABELS,
    NoConvergenceError,
    NormViolationError,
    NotHermitianError,
    build_density,
    hermitian_eigensystem,
    hermitian_eigenvalues,
    negativity,
    negativity_closed_form,
    partial_transpose,
)
from .oracle import (
    MAX_STEP_SCALE,
    OracleState,
    OracleTrajectory,
    StepTooLargeError,
    cross_validate,
    integrate,
    rhs,
)
from .propagator import (
    NoSteadyStateError,
    PropagatorCoeffs,
    amplitude_grid,
    d_pm,
    g_pm,
    propagate,
    q_coeffs,
    steady_amplitudes,
)
from .sweep import (
    PRESET_NAMES,
    CellResult,
    SweepResult,
    SweepSpec,
    Trajectory,
    UnknownPresetError,
    ValidationCell,
    compute_trajectory,
    run_preset,
    run_sweep,
    run_validation,
    steady_convergence_time,
    steady_report,
    write_csv,
    write_steady_csv,
    write_sweep_csv,
    write_validation_csv,
)

__version__ = "0.1.0"
