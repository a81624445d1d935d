"""Density matrix assembly, partial transpose, eigensolver, negativity.

Covers:
- 9x9 density-matrix layout, trace and hermiticity, norm guard
- partial transpose as an involution obeying the generic index rule
- the Jacobi eigensolver against the numpy referee (values, vectors,
  reconstruction) and its error paths
- negativity: frozen spectra and values for the named states, agreement
  of the eigensolver route with the sector closed form
"""

import math

import numpy as np
import pytest

from vqutrits.model import AmplitudeSet, named_initial_state
from vqutrits.negativity import (
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


def amps_from(c1a, c1b, c2a, c2b, t=0.0):
    return AmplitudeSet(c1a=c1a, c1b=c1b, c2a=c2a, c2b=c2b, time=t)


def random_amps(rng, norm=None):
    raw = rng.normal(size=4) + 1j * rng.normal(size=4)
    if norm is None:
        norm = math.sqrt(rng.uniform(0.0, 1.0))
    raw *= norm / np.linalg.norm(raw)
    return amps_from(*raw)


def random_hermitian(rng, n):
    raw = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return 0.5 * (raw + raw.conj().T)


# ---------------------------------------------------------------------------
# build_density

def test_basis_labels_layout():
    assert len(BASIS_LABELS) == 9
    assert BASIS_LABELS[0] == "A1A2"
    assert BASIS_LABELS[8] == "C1C2"
    # the four singly-excited slots used by the sector
    assert BASIS_LABELS[2] == "A1C2"
    assert BASIS_LABELS[5] == "B1C2"
    assert BASIS_LABELS[6] == "C1A2"
    assert BASIS_LABELS[7] == "C1B2"


def test_build_density_layout():
    amps = amps_from(0.1, 0.2j, 0.3, -0.4j)
    rho = build_density(amps)
    assert rho.shape == (9, 9)
    assert np.allclose(rho, rho.conj().T)
    assert np.trace(rho).real == pytest.approx(1.0, abs=1e-15)
    # excited block entries are c_i conj(c_j) at the labeled positions
    c = {2: amps.c1a, 5: amps.c1b, 6: amps.c2a, 7: amps.c2b}
    for i, ci in c.items():
        for j, cj in c.items():
            assert rho[i, j] == pytest.approx(ci * np.conj(cj), abs=1e-15)
    assert rho[8, 8] == pytest.approx(amps.ground_population, abs=1e-15)
    # everything outside those five rows/columns is empty
    mask = np.ones((9, 9), dtype=bool)
    for i in (2, 5, 6, 7, 8):
        mask[i, :] = False
        mask[:, i] = False
    assert np.all(rho[mask] == 0.0)


def test_build_density_rejects_overfilled_state():
    with pytest.raises(NormViolationError):
        build_density(amps_from(1.0, 0.5, 0.0, 0.0))


def test_build_density_tolerates_roundoff_norm():
    c = math.sqrt(0.5 * (1.0 + 5e-10))
    rho = build_density(amps_from(0.0, c, c, 0.0))
    assert rho[8, 8] == 0.0  # clamped, not negative


# ---------------------------------------------------------------------------
# partial_transpose

def test_partial_transpose_generic_rule(seed=20240210, n_cases=20):
    # <i1 j2| rho^T1 |k1 l2> = <k1 j2| rho |i1 l2> for arbitrary input
    rng = np.random.default_rng(seed)
    for _ in range(n_cases):
        rho = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        pt = partial_transpose(rho)
        for i in range(3):
            for j in range(3):
                for k in range(3):
                    for l in range(3):
                        assert pt[3 * i + j, 3 * k + l] == rho[3 * k + j, 3 * i + l]


def test_partial_transpose_is_an_involution(seed=20240211, n_cases=50):
    rng = np.random.default_rng(seed)
    for _ in range(n_cases):
        rho = rng.normal(size=(9, 9)) + 1j * rng.normal(size=(9, 9))
        assert np.array_equal(partial_transpose(partial_transpose(rho)), rho)


def test_partial_transpose_preserves_trace_and_hermiticity():
    rho = build_density(AmplitudeSet.from_initial(named_initial_state("partial")))
    pt = partial_transpose(rho)
    assert np.trace(pt) == pytest.approx(np.trace(rho), abs=1e-15)
    assert np.allclose(pt, pt.conj().T, atol=1e-15)


def test_partial_transpose_shape_check():
    with pytest.raises(ValueError, match="9x9"):
        partial_transpose(np.eye(4))


# ---------------------------------------------------------------------------
# hermitian_eigensystem

def test_eigensystem_against_numpy(seed=20240212, n_cases=40):
    rng = np.random.default_rng(seed)
    for n in (2, 3, 5, 9):
        for _ in range(n_cases):
            h = random_hermitian(rng, n)
            w, v = hermitian_eigensystem(h)
            assert np.all(np.diff(w) >= 0.0)
            assert np.max(np.abs(w - np.linalg.eigvalsh(h))) < 1e-9
            # eigenvector matrix is unitary and reconstructs the input
            assert np.max(np.abs(v.conj().T @ v - np.eye(n))) < 1e-9
            assert np.max(np.abs(v @ np.diag(w) @ v.conj().T - h)) < 1e-9


def test_eigensystem_diagonal_and_zero():
    w, v = hermitian_eigensystem(np.diag([3.0, -1.0, 2.0]))
    assert np.array_equal(w, [-1.0, 2.0, 3.0])
    assert np.allclose(np.abs(v), np.eye(3)[:, [1, 2, 0]])
    w0, v0 = hermitian_eigensystem(np.zeros((4, 4)))
    assert np.array_equal(w0, np.zeros(4))
    assert np.array_equal(v0, np.eye(4))


def test_eigensystem_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigensystem(np.array([[1.0, 2.0], [0.5, 1.0]]))
    with pytest.raises(ValueError, match="square"):
        hermitian_eigensystem(np.ones((2, 3)))


def test_eigensystem_sweep_budget():
    mat = np.array([[1.0, 0.5], [0.5, -1.0]])
    with pytest.raises(NoConvergenceError):
        hermitian_eigensystem(mat, max_sweeps=0)
    # one sweep is enough for a 2x2
    w, _ = hermitian_eigensystem(mat, max_sweeps=1)
    assert np.max(np.abs(w - np.linalg.eigvalsh(mat))) < 1e-12


def test_eigenvalues_shortcut_matches_eigensystem():
    rng = np.random.default_rng(20240213)
    h = random_hermitian(rng, 6)
    w_only = hermitian_eigenvalues(h)
    w_full, _ = hermitian_eigensystem(h)
    assert np.array_equal(w_only, w_full)


# ---------------------------------------------------------------------------
# negativity

def test_initial_negativities_frozen():
    cases = {"maximal": 1.0, "partial": math.sqrt(3.0) / 2.0, "product": 0.0}
    for name, expected in cases.items():
        amps = AmplitudeSet.from_initial(named_initial_state(name))
        assert negativity(amps) == pytest.approx(expected, abs=1e-9), name
        assert negativity_closed_form(amps) == pytest.approx(
            expected, abs=1e-9), name


def test_maximal_state_transpose_spectrum():
    # eigenvalues of rho^T1: one -1/2, three +1/2, five 0
    amps = AmplitudeSet.from_initial(named_initial_state("maximal"))
    w = hermitian_eigenvalues(partial_transpose(build_density(amps)))
    expected = np.array([-0.5, 0, 0, 0, 0, 0, 0.5, 0.5, 0.5])
    assert np.max(np.abs(w - expected)) < 1e-12


def test_closed_form_structure():
    # N = sqrt(p^2 + 4 s1 s2) - p on a hand-checkable state
    amps = amps_from(0.5, 0.0, 0.5j, 0.0)  # s1 = s2 = 1/4, p = 1/2
    expected = math.sqrt(0.25 + 0.25) - 0.5
    assert negativity_closed_form(amps) == pytest.approx(expected, abs=1e-15)
    assert negativity(amps) == pytest.approx(expected, abs=1e-12)


def test_single_atom_states_are_unentangled(seed=20240214, n_cases=50):
    # any amplitude set with s2 = 0 has N = 0 (and mirrored for s1 = 0)
    rng = np.random.default_rng(seed)
    for _ in range(n_cases):
        z = rng.normal(size=2) + 1j * rng.normal(size=2)
        z *= math.sqrt(rng.uniform(0.1, 1.0)) / np.linalg.norm(z)
        assert negativity(amps_from(z[0], z[1], 0.0, 0.0)) < 1e-12
        assert negativity(amps_from(0.0, 0.0, z[0], z[1])) < 1e-12


def test_eigensolver_matches_closed_form(seed=20240215, n_cases=500):
    rng = np.random.default_rng(seed)
    for _ in range(n_cases):
        amps = random_amps(rng)
        delta = abs(negativity(amps) - negativity_closed_form(amps))
        assert delta < 1e-9


def test_negativity_clamped_to_unit_range():
    # a state at the norm tolerance edge must not report N > 1 + 1e-9
    c = math.sqrt(0.5 * (1.0 + 0.9e-9))
    amps = amps_from(0.0, c, c, 0.0)
    n = negativity(amps)
    assert 1.0 - 1e-8 <= n <= 1.0 + 1e-9
