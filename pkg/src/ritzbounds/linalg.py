"""Self-contained dense complex linear algebra.

Hermitian eigendecomposition (cyclic complex Jacobi) and SVD (one-sided
Jacobi on columns), plus orthonormalization and the small amount of matrix
arithmetic the rest of the package needs. Matrices are plain complex128
NumPy arrays throughout; decompositions come back as named tuples.

The Jacobi kernels live in a separate backend module (compiled when
available) because the rotation sweeps are the package's hot loop. Accuracy
targets: eigen-residual and SVD reconstruction to 1e-10 relative,
orthogonality of computed bases to 1e-12, for dimensions up to a few
hundred.
"""

import math
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import (
    DimensionMismatchError,
    NoConvergenceError,
    NonFiniteError,
    ZeroMatrixError,
)

# Sweep policy shared by both kernels: off-diagonal mass must drop below
# 1e-14 relative, within 100 cyclic sweeps.
OFFDIAG_TOL = 1e-14
MAX_SWEEPS = 100


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray   # real, non-increasing
    eigenvectors: np.ndarray  # unitary, column i pairs with eigenvalue i


class SingularDecomposition(NamedTuple):
    singular_values: np.ndarray  # non-negative, non-increasing
    left_vectors: np.ndarray     # orthonormal columns
    right_vectors: np.ndarray    # orthonormal columns


def as_matrix(M, name="matrix"):
    """Validate and convert to a finite 2-D complex128 array."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise DimensionMismatchError(f"{name} must be 2-D and non-empty, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    return A


def hermitian_part(M):
    """(M + M*) / 2; the canonical Hermitian representative of M.

    All Hermitian inputs in this package are symmetrized on entry so that
    self-adjointness holds exactly, not just up to rounding.
    """
    A = as_matrix(M)
    if A.shape[0] != A.shape[1]:
        raise DimensionMismatchError(f"expected square matrix, got {A.shape}")
    return (A + A.conj().T) / 2.0


def adjoint(M):
    return as_matrix(M).conj().T.copy()


def matmul(A, B):
    A = as_matrix(A, "left factor")
    B = as_matrix(B, "right factor")
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def sub(A, B):
    A = as_matrix(A)
    B = as_matrix(B)
    if A.shape != B.shape:
        raise DimensionMismatchError(f"cannot subtract {B.shape} from {A.shape}")
    return A - B


def scale(alpha, A):
    return complex(alpha) * as_matrix(A)


def frobenius(A):
    return float(np.linalg.norm(np.asarray(A)))


def _sort_desc_stable(values):
    """Indices sorting values non-increasingly; ties keep lower index first."""
    return np.argsort(-values, kind="stable")


def _prescale_factor(M):
    """Power-of-two factor bringing the largest entry near unit scale.

    The Jacobi kernels square norms, so entries beyond ~2^+-400 would
    overflow or underflow; dividing by a power of two is exact and keeps
    them in range.
    """
    maxabs = float(np.max(np.abs(M))) if M.size else 0.0
    if maxabs == 0.0 or not math.isfinite(maxabs):
        return 1.0
    e = math.frexp(maxabs)[1]
    if -400 <= e <= 400:
        return 1.0
    return math.ldexp(1.0, min(max(e, -1021), 1023))


def hermitian_eig(A):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns eigenvalues in non-increasing order with matching eigenvector
    columns. Raises NoConvergenceError if the sweep cap is exceeded, which
    signals pathological input rather than a tight tolerance.
    """
    H = hermitian_part(A)
    n = H.shape[0]
    V = np.eye(n, dtype=np.complex128)
    factor = _prescale_factor(H)
    work = np.ascontiguousarray(H / factor)
    norm = frobenius(work)
    if norm == 0.0:
        return EigenDecomposition(np.zeros(n), V)
    tol = OFFDIAG_TOL * norm
    off, _ = _kernels.active.hermitian_eig_sweeps(work, V, tol, MAX_SWEEPS)
    if off > tol:
        raise NoConvergenceError(
            f"Jacobi eigensolver stalled at off-diagonal norm {off:.3e} after {MAX_SWEEPS} sweeps"
        )
    w = np.diag(work).real * factor
    order = _sort_desc_stable(w)
    return EigenDecomposition(w[order], V[:, order])


def _complete_orthonormal(U, have, m):
    """Fill the columns of U beyond `have` with an orthonormal complement.

    Deterministic: each new column is the canonical basis vector with the
    largest residual after projection, re-orthogonalized twice.
    """
    k = U.shape[1]
    for j in range(have, k):
        best = None
        best_norm = -1.0
        for i in range(m):
            v = np.zeros(m, dtype=np.complex128)
            v[i] = 1.0
            for _ in range(2):
                v -= U[:, :j] @ (U[:, :j].conj().T @ v)
            nv = np.linalg.norm(v)
            if nv > best_norm:
                best_norm = nv
                best = v
        U[:, j] = best / best_norm
    return U


def svd(B):
    """Thin SVD by one-sided Jacobi orthogonalization of the columns.

    Works on B itself when rows >= cols, otherwise on its adjoint, so the
    sweep always orthogonalizes the short side. min(rows, cols) singular
    values are returned, non-increasing.
    """
    B = as_matrix(B)
    m, n = B.shape
    if m < n:
        s, u, v = _svd_tall(B.conj().T.copy())
        return SingularDecomposition(s, v, u)
    s, u, v = _svd_tall(B.copy())
    return SingularDecomposition(s, u, v)


def _svd_tall(W):
    m, n = W.shape
    V = np.eye(n, dtype=np.complex128)
    factor = _prescale_factor(W)
    if factor != 1.0:
        W = W / factor
    worst, _ = _kernels.active.svd_onesided_sweeps(W, V, OFFDIAG_TOL, MAX_SWEEPS)
    if worst > OFFDIAG_TOL:
        raise NoConvergenceError(
            f"one-sided Jacobi stalled at relative off-diagonal {worst:.3e} after {MAX_SWEEPS} sweeps"
        )
    norms = np.linalg.norm(W, axis=0)
    order = _sort_desc_stable(norms)
    raw = norms[order]
    W = W[:, order]
    V = V[:, order]
    U = np.zeros((m, n), dtype=np.complex128)
    have = 0
    for j in range(n):
        if raw[j] > 0.0:
            U[:, j] = W[:, j] / raw[j]
            have = j + 1
        else:
            break
    if have < n:
        _complete_orthonormal(U, have, m)
    return raw * factor, U, V


def orthonormalize(M, rank_tol=1e-10):
    """Orthonormal basis of the column space of M.

    Columns with singular value <= rank_tol * s_max are treated as rank
    deficiency and dropped; a numerical rank of zero raises ZeroMatrixError.
    """
    M = as_matrix(M)
    if not rank_tol > 0.0:
        raise ValueError("rank_tol must be positive")
    dec = svd(M)
    smax = dec.singular_values[0] if dec.singular_values.size else 0.0
    if smax == 0.0:
        raise ZeroMatrixError("matrix has numerical rank zero")
    rank = int(np.count_nonzero(dec.singular_values > rank_tol * smax))
    if rank == 0:
        raise ZeroMatrixError("matrix has numerical rank zero")
    return dec.left_vectors[:, :rank].copy()
