"""Numeric RK4 oracle for the amplitude equations.

Covers:
- rhs() on hand-checkable states (zero state, fresh accumulators,
  loaded accumulators)
- the step-size guard
- integrate(): identity at t_end = 0, unitary rotation at gamma0 = 0,
  exact conservation of the atom-difference amplitudes
- cross_validate(): closed form vs RK4 under 1e-5 on representative
  cells, and the empirical convergence order ~4
"""

import math

import numpy as np
import pytest

from vqutrits.model import InitialState, ModelParams, named_initial_state
from vqutrits.oracle import (
    MAX_STEP_SCALE,
    OracleState,
    StepTooLargeError,
    cross_validate,
    integrate,
    rhs,
)

SQRT1_2 = 1.0 / math.sqrt(2.0)


def test_rhs_zero_state_is_stationary():
    state = OracleState(0.0, 0.0, 0.0, 0.0, 0.0, 0.0, t=2.0)
    dot = rhs(state, ModelParams(gamma0=3.0, theta=0.7, omega_dd=1.0))
    assert (dot.c1a, dot.c1b, dot.c2a, dot.c2b, dot.z_a, dot.z_b) == (
        0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    assert dot.t == 1.0


def test_rhs_fresh_accumulators():
    # at t = 0 the memory is empty: amplitudes only rotate, accumulators
    # pick up the symmetric sums
    state = OracleState.from_initial(named_initial_state("maximal"))
    assert state.z_a == 0.0 and state.z_b == 0.0 and state.t == 0.0
    dot = rhs(state, ModelParams(gamma0=2.0, theta=0.3, omega_dd=1.5))
    assert dot.c1a == pytest.approx(0.0, abs=1e-15)
    assert dot.c1b == pytest.approx(-3j * SQRT1_2, abs=1e-15)
    assert dot.c2a == pytest.approx(-3j * SQRT1_2, abs=1e-15)
    assert dot.c2b == pytest.approx(0.0, abs=1e-15)
    assert dot.z_a == pytest.approx(SQRT1_2, abs=1e-15)
    assert dot.z_b == pytest.approx(SQRT1_2, abs=1e-15)


def test_rhs_loaded_accumulators():
    # kappa = 2 doubles the memory drive and the accumulator leak
    params = ModelParams(gamma0=4.0, theta=0.5, kappa=2.0, omega_dd=0.0)
    state = OracleState(c1a=0.1, c1b=0.2, c2a=0.3, c2b=0.4,
                        z_a=0.2, z_b=-0.1j, t=1.0)
    dot = rhs(state, params)
    drive_a = -4.0 * (0.2 + 0.5 * (-0.1j))
    drive_b = -4.0 * (-0.1j + 0.5 * 0.2)
    assert dot.c1a == pytest.approx(drive_a, abs=1e-15)
    assert dot.c2a == pytest.approx(drive_a, abs=1e-15)
    assert dot.c1b == pytest.approx(drive_b, abs=1e-15)
    assert dot.c2b == pytest.approx(drive_b, abs=1e-15)
    assert dot.z_a == pytest.approx((0.1 + 0.3) - 2.0 * 0.2, abs=1e-15)
    assert dot.z_b == pytest.approx((0.2 + 0.4) - 2.0 * (-0.1j), abs=1e-15)


def test_step_guard():
    init = named_initial_state("partial")
    # positive step required
    for dt in (0.0, -1e-3):
        with pytest.raises(StepTooLargeError):
            integrate(ModelParams(gamma0=1.0, theta=0.0), init, 1.0, dt=dt)
    # fast dipole-dipole rotation: 2*Omega = 25 caps dt at 1e-3
    fast = ModelParams(gamma0=1.0, theta=0.0, omega_dd=12.5)
    with pytest.raises(StepTooLargeError, match="too coarse"):
        integrate(fast, init, 1.0, dt=2e-3)
    integrate(fast, init, 0.01, dt=MAX_STEP_SCALE / 25.0)  # boundary passes
    # large gamma0 tightens the cap the same way
    stiff = ModelParams(gamma0=30.0, theta=0.0)
    with pytest.raises(StepTooLargeError):
        integrate(stiff, init, 1.0, dt=1e-3)


def test_integrate_zero_span():
    init = named_initial_state("maximal")
    traj = integrate(ModelParams(gamma0=1.0, theta=0.0), init, 0.0)
    assert traj.times.shape == (1,)
    assert traj.amplitudes.shape == (1, 4)
    assert np.array_equal(traj.state_at(0),
                          [init.c1a, init.c1b, init.c2a, init.c2b])


def test_integrate_shapes_and_time_grid():
    traj = integrate(ModelParams(gamma0=1.0, theta=0.5), named_initial_state(
        "partial"), t_end=0.5, dt=1e-2)
    assert traj.times.shape == (51,)
    assert traj.amplitudes.shape == (51, 4)
    assert traj.times[0] == 0.0
    assert traj.times[-1] == pytest.approx(0.5, abs=1e-12)


def test_integrate_undamped_rotation():
    # gamma0 = 0 leaves a pure dipole-dipole rotation: norm conserved,
    # amplitudes follow exp(-2i Omega t)
    params = ModelParams(gamma0=0.0, theta=0.9, omega_dd=5.0)
    init = named_initial_state("partial")
    traj = integrate(params, init, t_end=2.0, dt=2e-3)
    norms = np.sum(np.abs(traj.amplitudes) ** 2, axis=1)
    assert np.max(np.abs(norms - 1.0)) < 1e-8
    expected = np.exp(-10j * traj.times)[:, None] * np.array(
        [init.c1a, init.c1b, init.c2a, init.c2b])
    assert np.max(np.abs(traj.amplitudes - expected)) < 1e-5


def test_integrate_conserves_atom_differences():
    # d(c1 - c2)/dt = -2i Omega (c1 - c2): at Omega = 0 the differences
    # are exact constants of the discrete scheme too
    params = ModelParams(gamma0=10.0, theta=0.9)
    init = named_initial_state("partial")
    traj = integrate(params, init, t_end=5.0, dt=1e-3)
    diff_a = traj.amplitudes[:, 0] - traj.amplitudes[:, 2]
    diff_b = traj.amplitudes[:, 1] - traj.amplitudes[:, 3]
    assert np.max(np.abs(diff_a - diff_a[0])) < 1e-12
    assert np.max(np.abs(diff_b - diff_b[0])) < 1e-12
    # with rotation the moduli still stay put (small phase-error slack)
    rotated = ModelParams(gamma0=10.0, theta=0.9, omega_dd=12.0)
    traj = integrate(rotated, init, t_end=5.0, dt=1e-3)
    diff_a = np.abs(traj.amplitudes[:, 0] - traj.amplitudes[:, 2])
    assert np.max(np.abs(diff_a - diff_a[0])) < 1e-7


def test_cross_validate_representative_cells():
    init = named_initial_state("partial")
    cells = [
        ModelParams(gamma0=10.0, theta=0.9, omega_dd=12.0),
        ModelParams(gamma0=0.1, theta=0.5, omega_dd=12.0),
        ModelParams(gamma0=10.0, theta=1.0, omega_dd=0.0),
    ]
    for params in cells:
        err = cross_validate(params, init, t_end=10.0, dt=1e-3)
        assert err < 1e-5, (params, err)


def test_rk4_convergence_order():
    # halving dt must cut the error by ~2^4
    params = ModelParams(gamma0=10.0, theta=0.9, omega_dd=12.0)
    init = named_initial_state("partial")
    err_coarse = cross_validate(params, init, t_end=10.0, dt=1e-3)
    err_fine = cross_validate(params, init, t_end=10.0, dt=5e-4)
    assert err_coarse > 1e-8  # measurably above roundoff
    order = math.log2(err_coarse / err_fine)
    assert 3.7 < order < 4.3, (err_coarse, err_fine, order)
