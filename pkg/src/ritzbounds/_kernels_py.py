"""Pure NumPy implementation of the Jacobi rotation kernels.

This is the fallback backend; `_kernels_cy` implements the same two entry
points in Cython with an identical contract. Both mutate their array
arguments in place:

``hermitian_eig_sweeps(A, V, tol_off, max_sweeps)``
    Cyclic complex Jacobi on a Hermitian ``A`` (d x d complex128). ``V``
    accumulates the rotations. Returns ``(off_norm, sweeps)`` where
    ``off_norm`` is the Frobenius norm of the final off-diagonal part.

``svd_onesided_sweeps(W, V, tol_rel, max_sweeps)``
    One-sided Jacobi on the columns of ``W`` (m x n complex128); ``V``
    accumulates the right rotations. Columns of the final ``W`` are
    mutually orthogonal relative to ``tol_rel``. Returns
    ``(worst_rel, sweeps)`` with ``worst_rel`` the largest relative
    non-orthogonality seen in the last measuring pass.
"""

import math

import numpy as np


def _offdiag_norm(A):
    # summed directly: ||A||^2 - ||diag||^2 cancels catastrophically once
    # the off-diagonal mass is small, which stalls convergence checks
    off = A.copy()
    np.fill_diagonal(off, 0.0)
    return float(np.linalg.norm(off))


def _rotation(tau):
    """tangent/cosine/sine of the angle zeroing a symmetrized 2x2 pivot."""
    tau = float(tau)
    if abs(tau) > 1e150:
        t = 1.0 / (2.0 * tau)  # asymptotic root; tau*tau would overflow
    elif tau >= 0.0:
        t = 1.0 / (tau + math.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + math.sqrt(1.0 + tau * tau))
    c = 1.0 / math.sqrt(1.0 + t * t)
    return c, t * c


def hermitian_eig_sweeps(A, V, tol_off, max_sweeps):
    n = A.shape[0]
    if n < 2:
        return 0.0, 0
    off = _offdiag_norm(A)
    sweeps = 0
    while off > tol_off and sweeps < max_sweeps:
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                g = abs(apq)
                if g == 0.0:
                    continue
                tau = (A[q, q].real - A[p, p].real) / (2.0 * g)
                c, s = _rotation(tau)
                phase = apq / g
                # unitary J = diag(1, conj(phase)) . [[c, s], [-s, c]]
                colp = A[:, p].copy()
                colq = np.conj(phase) * A[:, q]
                A[:, p] = c * colp - s * colq
                A[:, q] = s * colp + c * colq
                rowp = A[p, :].copy()
                rowq = phase * A[q, :]
                A[p, :] = c * rowp - s * rowq
                A[q, :] = s * rowp + c * rowq
                A[p, p] = A[p, p].real
                A[q, q] = A[q, q].real
                A[p, q] = 0.0
                A[q, p] = 0.0
                vp = V[:, p].copy()
                vq = np.conj(phase) * V[:, q]
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
        sweeps += 1
        off = _offdiag_norm(A)
    return off, sweeps


def _worst_rel_offdiag(W):
    """max |w_p* w_q| / (|w_p| |w_q|) over column pairs, zeros skipped."""
    G = W.conj().T @ W
    nrm = np.sqrt(np.abs(np.diag(G).real))
    n = nrm.size
    worst = 0.0
    for p in range(n - 1):
        for q in range(p + 1, n):
            denom = nrm[p] * nrm[q]
            if denom > 0.0:
                worst = max(worst, abs(G[p, q]) / denom)
    return worst


def svd_onesided_sweeps(W, V, tol_rel, max_sweeps):
    n = W.shape[1]
    if n < 2:
        return 0.0, 0
    sweeps = 0
    while sweeps < max_sweeps:
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                wp = W[:, p]
                wq = W[:, q]
                gamma = np.vdot(wp, wq)
                g = abs(gamma)
                if g == 0.0:
                    continue
                alpha = np.vdot(wp, wp).real
                beta = np.vdot(wq, wq).real
                denom = math.sqrt(alpha * beta)
                if denom == 0.0 or g <= tol_rel * denom:
                    continue
                tau = (beta - alpha) / (2.0 * g)
                c, s = _rotation(tau)
                phase = gamma / g
                colq = np.conj(phase) * wq
                W[:, q] = s * wp + c * colq
                W[:, p] = c * wp - s * colq
                vp = V[:, p].copy()
                vq = np.conj(phase) * V[:, q]
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
                rotated = True
        sweeps += 1
        if not rotated:
            break
    return _worst_rel_offdiag(W), sweeps
