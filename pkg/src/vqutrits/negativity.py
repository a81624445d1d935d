"""Two-qutrit density matrix, partial transpose and negativity.

The 9x9 joint density matrix lives in the product basis

    {|A1 A2>, |A1 B2>, |A1 C2>, |B1 A2>, |B1 B2>, |B1 C2>,
     |C1 A2>, |C1 B2>, |C1 C2>}

(atom-1 level major, atom-2 level minor; C is the ground level).  In the
single-excitation sector only rows/columns {3, 6, 7, 8, 9} (1-based) are
populated: the four singly-excited basis states and the shared ground.

Negativity is taken from the partial transpose over atom 1,

    N = -2 * sum(negative eigenvalues of rho^T1),

normalized so the maximally entangled pair gives N = 1.  The same number
has a closed form in this sector,

    N = sqrt(p^2 + 4*s1*s2) - p,
    s1 = |c1a|^2 + |c1b|^2,  s2 = |c2a|^2 + |c2b|^2,  p = 1 - s1 - s2,

because rho^T1 splits into two positive 2x2 blocks and one arrow-shaped
block contributing exactly one non-positive eigenvalue
(p - sqrt(p^2 + 4*s1*s2))/2.
"""

from __future__ import annotations

import numpy as np

from .model import AmplitudeSet, NORM_TOL

__all__ = [
    "BASIS_LABELS",
    "NormViolationError",
    "NotHermitianError",
    "NoConvergenceError",
    "build_density",
    "partial_transpose",
    "hermitian_eigenvalues",
    "hermitian_eigensystem",
    "negativity",
    "negativity_closed_form",
]

BASIS_LABELS = (
    "A1A2", "A1B2", "A1C2",
    "B1A2", "B1B2", "B1C2",
    "C1A2", "C1B2", "C1C2",
)

# Basis positions of the four excited amplitudes and the ground state.
_IA, _IB, _JA, _JB, _GG = 2, 5, 6, 7, 8


class NormViolationError(ValueError):
    """Excited norm exceeds 1 + NORM_TOL; no density matrix exists."""


class NotHermitianError(ValueError):
    """Eigensolver input is not Hermitian within tolerance."""


class NoConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before the off-diagonal norm target."""


def build_density(amps: AmplitudeSet) -> np.ndarray:
    """Assemble the 9x9 density matrix for one amplitude set.

    The ground population is read as 1 - excited_norm (clamped at 0), so
    the trace is 1 whenever the amplitudes are normalized.
    """
    norm = amps.excited_norm
    if norm > 1.0 + NORM_TOL:
        raise NormViolationError(
            f"excited norm {norm!r} exceeds 1 by more than {NORM_TOL}"
        )
    c = (amps.c1a, amps.c1b, amps.c2a, amps.c2b)
    idx = (_IA, _IB, _JA, _JB)
    rho = np.zeros((9, 9), dtype=complex)
    for i, ci in zip(idx, c):
        for j, cj in zip(idx, c):
            rho[i, j] = ci * np.conj(cj)
    rho[_GG, _GG] = amps.ground_population
    return rho


def partial_transpose(rho: np.ndarray) -> np.ndarray:
    """Partial transpose over atom 1 of a 9x9 two-qutrit matrix.

    Index rule <i_1 j_2| rho^T1 |k_1 l_2> = <k_1 j_2| rho |i_1 l_2>,
    applied for arbitrary input (an involution, not a sector pattern).
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (9, 9):
        raise ValueError(f"expected a 9x9 matrix, got shape {rho.shape}")
    return (
        rho.reshape(3, 3, 3, 3).transpose(2, 1, 0, 3).reshape(9, 9)
    )


def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigensystem(
    mat: np.ndarray, max_sweeps: int = 50, tol: float = 1e-12
):
    """Eigenvalues and eigenvectors of a small Hermitian matrix.

    Cyclic Jacobi with complex rotations: each (p, q) pivot is first
    dephased so the pivot entry is real, then rotated away by the classic
    symmetric-Jacobi angle.  Sweeps stop when the off-diagonal Frobenius
    norm falls under ``tol * ||mat||_F``.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and eigenvectors
    in the columns of ``v`` (``mat @ v = v @ diag(w)``).

    Raises
    ------
    NotHermitianError
        if ``mat`` deviates from its conjugate transpose beyond 1e-12
        (relative to its largest entry).
    NoConvergenceError
        if ``max_sweeps`` cyclic sweeps do not reach the target.
    """
    a = np.array(mat, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    herm_slack = 1e-12 * max(1.0, float(np.max(np.abs(a))) if n else 1.0)
    if float(np.max(np.abs(a - a.conj().T))) > herm_slack:
        raise NotHermitianError("matrix is not Hermitian within 1e-12")
    a = 0.5 * (a + a.conj().T)  # scrub roundoff asymmetry before rotating
    v = np.eye(n, dtype=complex)
    if scale == 0.0:
        return np.zeros(n), v

    target = tol * scale
    # Pivots this small cannot lift the off-diagonal norm above target
    # even if every one of the n*(n-1)/2 of them is skipped.
    skip = target / max(1.0, float(n))
    converged = _offdiag_norm(a) <= target
    sweeps = 0
    while not converged and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= skip:
                    continue
                phase = apq / mag
                # Real-rotation angle for the dephased 2x2 pivot block.
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(tau) + np.hypot(1.0, tau))
                if tau < 0.0:
                    t = -t
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # Unitary: U[p,p]=c*phase, U[p,q]=s*phase, U[q,p]=-s, U[q,q]=c.
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                a[:, p] = c * phase * col_p - s * col_q
                a[:, q] = s * phase * col_p + c * col_q
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                a[p, :] = c * np.conj(phase) * row_p - s * row_q
                a[q, :] = s * np.conj(phase) * row_p + c * row_q
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * phase * vp - s * vq
                v[:, q] = s * phase * vp + c * vq
        sweeps += 1
        converged = _offdiag_norm(a) <= target
    if not converged:
        raise NoConvergenceError(
            f"no convergence after {max_sweeps} Jacobi sweeps"
        )
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


def hermitian_eigenvalues(
    mat: np.ndarray, max_sweeps: int = 50, tol: float = 1e-12
) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix (Jacobi sweeps)."""
    w, _ = hermitian_eigensystem(mat, max_sweeps=max_sweeps, tol=tol)
    return w


def negativity(amps: AmplitudeSet) -> float:
    """Negativity via the partial-transpose spectrum.

    -2 times the sum of the negative eigenvalues of rho^T1, clamped to
    [0, 1 + 1e-9].
    """
    rho_pt = partial_transpose(build_density(amps))
    w = hermitian_eigenvalues(rho_pt)
    total = -2.0 * float(w[w < 0.0].sum())
    return min(max(total, 0.0), 1.0 + 1e-9)


def negativity_closed_form(amps: AmplitudeSet) -> float:
    """Sector closed form sqrt(p^2 + 4*s1*s2) - p; equals negativity()."""
    s1 = abs(amps.c1a) ** 2 + abs(amps.c1b) ** 2
    s2 = abs(amps.c2a) ** 2 + abs(amps.c2b) ** 2
    p = amps.ground_population
    return float(np.sqrt(p * p + 4.0 * s1 * s2) - p)
