"""Subspaces as isometries: principal angles, projections, sums, complements.

A subspace of C^d is represented by a d x k matrix with orthonormal columns
(validated on entry, tolerance 1e-12). Principal angles between two such
bases come from the singular values of the cross-Gram matrix, clamped into
[0, 1] before arccos since rounding can push a cosine to 1 + 1e-16.
"""

import numpy as np

from . import linalg
from .errors import (
    DegenerateCutError,
    DimensionMismatchError,
    FullSpaceError,
    PreconditionViolatedError,
)
from .majorization import MajorizationVerdict, sort_desc, submajorizes

BASIS_TOL = 1e-12
# Threshold below which a principal angle counts as structurally zero
# (subspace intersection) rather than rounding noise.
ANGLE_TOL = 1e-8
RANK_TOL = 1e-10
# Cosines this close to 1 are rounding artifacts: arccos amplifies an eps
# error in the singular value to a sqrt(eps)-sized spurious angle, so they
# are snapped to exactly 1 (angle exactly 0). The threshold sits an order
# of magnitude above the Jacobi kernels' noise floor yet leaves angles
# of 1e-6 rad and larger untouched.
COS_SNAP = 1e-13


def as_basis(X, name="basis"):
    """Validate a matrix whose columns form an orthonormal basis."""
    X = linalg.as_matrix(X, name)
    d, k = X.shape
    if k > d:
        raise DimensionMismatchError(f"{name}: more columns ({k}) than ambient dimension ({d})")
    gram_err = float(np.max(np.abs(X.conj().T @ X - np.eye(k))))
    if gram_err > BASIS_TOL:
        raise PreconditionViolatedError(
            f"{name} columns are not orthonormal (deviation {gram_err:.3e})"
        )
    return X


def principal_angles(X, Y):
    """Principal angles between the column spans, non-increasing, in [0, pi/2].

    There are min(dim X, dim Y) of them; the cosines of the angles in
    increasing order are the singular values of X* Y.
    """
    X = as_basis(X, "X")
    Y = as_basis(Y, "Y")
    if X.shape[0] != Y.shape[0]:
        raise DimensionMismatchError("X and Y live in different ambient dimensions")
    s = np.clip(linalg.svd(X.conj().T @ Y).singular_values, 0.0, 1.0)
    s[s >= 1.0 - COS_SNAP] = 1.0
    angles = np.arccos(s)
    return np.ascontiguousarray(angles[::-1])


def projector(X):
    """Orthogonal projection onto the span of X, as an exactly Hermitian matrix."""
    X = as_basis(X)
    return linalg.hermitian_part(X @ X.conj().T)


def orthocomplement(X):
    """Orthonormal basis of the orthogonal complement of span(X)."""
    X = as_basis(X)
    d, k = X.shape
    if k == d:
        raise FullSpaceError("the full space has a zero-dimensional complement")
    comp = np.eye(d, dtype=np.complex128) - X @ X.conj().T
    Q = linalg.orthonormalize(comp, RANK_TOL)
    if Q.shape[1] != d - k:
        raise PreconditionViolatedError(
            f"complement rank {Q.shape[1]} != {d - k}; basis not orthonormal enough"
        )
    return Q


def subspace_sum(X, Y, rank_tol=RANK_TOL):
    """Orthonormal basis of span(X) + span(Y).

    Realized as one orthonormalization pass over the concatenation [X | Y];
    the rank decision uses rank_tol relative to the largest singular value.
    """
    X = as_basis(X, "X")
    Y = as_basis(Y, "Y")
    if X.shape[0] != Y.shape[0]:
        raise DimensionMismatchError("X and Y live in different ambient dimensions")
    return linalg.orthonormalize(np.hstack([X, Y]), rank_tol)


def compress(A, S):
    """The compression S* A S of a Hermitian A onto the span of the isometry S."""
    A = linalg.hermitian_part(A)
    S = as_basis(S, "S")
    if S.shape[0] != A.shape[0]:
        raise DimensionMismatchError("S and A have incompatible dimensions")
    return linalg.hermitian_part(S.conj().T @ A @ S)


def invariant_subspace(A, eigen_indices, gap_tol=1e-8):
    """Span of the selected eigenvectors of a Hermitian matrix.

    Indices are 0-based positions in the non-increasing eigenvalue order.
    Refuses to cut through a numerically repeated eigenvalue (adjacent gap
    below gap_tol * spectral norm) because the resulting span would not be
    well defined.
    """
    dec = linalg.hermitian_eig(A)
    d = dec.eigenvalues.size
    idx = sorted(set(int(i) for i in eigen_indices))
    if not idx:
        raise DimensionMismatchError("eigen_indices must be non-empty")
    if idx[0] < 0 or idx[-1] >= d:
        raise DimensionMismatchError(f"eigen_indices out of range for dimension {d}")
    scale = max(abs(dec.eigenvalues[0]), abs(dec.eigenvalues[-1]))
    selected = np.zeros(d, dtype=bool)
    selected[idx] = True
    for i in range(d - 1):
        if selected[i] != selected[i + 1]:
            gap = dec.eigenvalues[i] - dec.eigenvalues[i + 1]
            if gap < gap_tol * scale:
                raise DegenerateCutError(
                    f"selection splits eigenvalues {i} and {i + 1} separated by {gap:.3e}"
                )
    return dec.eigenvectors[:, idx].copy()


def intersection_dimension(X, Y, angle_tol=ANGLE_TOL):
    """Number of principal angles at (numerical) zero."""
    return int(np.count_nonzero(principal_angles(X, Y) <= angle_tol))


def sin_squared_identity_check(X, Y, tol=1e-9):
    """Cross-validate three routes to the squared sines of the angles.

    The eigenvalues of P_X P_{Y-perp} P_X, the squared singular values of
    P_{Y-perp} P_X, and (sin^2 of the angles, padded with zeros) must agree.
    Returned as an equality verdict: submajorization in both directions
    plus a maximum-deviation check, all at tolerance tol.
    """
    X = as_basis(X, "X")
    Y = as_basis(Y, "Y")
    d, k = X.shape
    if Y.shape != X.shape:
        raise DimensionMismatchError("X and Y must have identical shapes")
    if k == d:
        pyp = np.zeros((d, d), dtype=np.complex128)
    else:
        pyp = projector(orthocomplement(Y))
    px = projector(X)
    via_eig = linalg.hermitian_eig(linalg.hermitian_part(px @ pyp @ px)).eigenvalues
    via_svd = linalg.svd(pyp @ px).singular_values ** 2
    theta = principal_angles(X, Y)
    via_angles = np.concatenate([sort_desc(np.sin(theta) ** 2), np.zeros(d - k)])
    forward = submajorizes(via_eig, via_angles, tol)
    backward = submajorizes(via_angles, via_eig, tol)
    deviation = max(
        float(np.max(np.abs(via_eig - via_svd))),
        float(np.max(np.abs(via_eig - via_angles))),
    )
    margins = np.minimum(forward.prefix_margins, backward.prefix_margins)
    worst = int(np.argmin(margins))
    holds = forward.holds and backward.holds and deviation <= tol
    return MajorizationVerdict(holds, margins, worst, forward.trace_gap)
