"""Executable submajorization bounds on the change of Ritz values.

Each operation evaluates one inequality between the Ritz values of two
k-dimensional subspaces of a Hermitian matrix: the left side is the vector
of absolute Ritz differences (or a residual-singular-value vector), the
right side the bound, and the result is a :class:`BoundReport` carrying
both sides, the margin verdict, and instance metadata.

Conventions shared by every bound:

* Ritz value lists are compared after sorting both non-increasingly,
  subtracting entrywise, taking absolute values, and resorting.
* Vector products and quotients pair entries in the natural descending
  orientations: singular values descending, principal angles descending,
  hence sin/tan descending and 1/cos descending.
* Verdict slack defaults to 1e-9 * max(1, ||rhs||_inf * k).
"""

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import (
    AnglesTooLargeError,
    DimensionMismatchError,
    HypothesisFailedError,
    InvalidCertificateError,
    InvariantViolationError,
    NoSeparationError,
    NotInvariantError,
    NotPositiveDefiniteError,
    NotTopKError,
    SingularTError,
)
from .majorization import (
    MajorizationVerdict,
    apply_monotone_convex,
    default_tolerance,
    sort_desc,
    submajorizes,
    uin_norms,
)
from .subspaces import as_basis, compress, orthocomplement, principal_angles, subspace_sum

# Guard band for the "largest angle strictly below pi/2" hypotheses.
ANGLE_GUARD = 1e-8
# A subspace counts as invariant when ||A X - X (X*AX)||_F <= this * ||A||_F.
INVARIANCE_TOL = 1e-9
# Validation slack for separation certificates.
CERT_TOL = 1e-10
# Separations below this (relative to the interval scale) are rounding
# noise, not usable certificates.
SEPARATION_FLOOR = 1e-12


class RayleighData(NamedTuple):
    rho: np.ndarray                 # k x k compression X* A X
    ritz_values: np.ndarray         # eigenvalues of rho, non-increasing
    residual: np.ndarray            # d x k, A X - X rho
    residual_singulars: np.ndarray  # singular values of the residual


@dataclass(frozen=True)
class SpectralSpread:
    """Mirrored eigenvalue gaps of a compression, non-increasing.

    Entry i is (eigenvalue i) - (eigenvalue p-1-i) of the compression onto
    the reference subspace; antisymmetric under reversal.
    """

    values: np.ndarray


@dataclass(frozen=True)
class BoundReport:
    theorem_id: str
    lhs: np.ndarray
    rhs: np.ndarray
    verdict: MajorizationVerdict
    relation: str  # "submajorization" | "norm_inequality_family"
    metadata: dict = field(default_factory=dict)


@dataclass(frozen=True)
class DknCertificate:
    """Separation data for the tan-theta theorems.

    The spectrum of the compression onto the complement of the invariant
    subspace lies in [a, b]; every Ritz value of the probe subspace is at
    distance >= delta outside it, on the recorded side.
    """

    interval: tuple
    delta: float
    side_assignment: tuple  # one of "below"/"above" per Ritz value


def rayleigh(A, X):
    """Rayleigh quotient, Ritz values, and residual of a subspace."""
    A = linalg.hermitian_part(A)
    X = as_basis(X, "X")
    if X.shape[0] != A.shape[0]:
        raise DimensionMismatchError("X and A have incompatible dimensions")
    rho = linalg.hermitian_part(X.conj().T @ A @ X)
    residual = A @ X - X @ rho
    return RayleighData(
        rho=rho,
        ritz_values=linalg.hermitian_eig(rho).eigenvalues,
        residual=residual,
        residual_singulars=linalg.svd(residual).singular_values,
    )


def spectral_spread(A, Z):
    """Spread of A relative to span(Z): eigenvalue list of the compression
    minus its reversal."""
    vals = linalg.hermitian_eig(compress(A, Z)).eigenvalues
    return SpectralSpread(values=vals - vals[::-1])


def _metadata(A, X, Y, theta=None, **extra):
    md = {"d": int(A.shape[0]), "k": int(X.shape[1])}
    if Y is not None:
        md["k_y"] = int(Y.shape[1])
    if theta is not None and len(theta):
        md["theta_1"] = float(theta[0])
    md.update(extra)
    return md


def _report(theorem_id, lhs, rhs, tol=None, relation="submajorization", metadata=None):
    tol = default_tolerance(rhs) if tol is None else tol
    if relation == "submajorization":
        verdict = submajorizes(lhs, rhs, tol)
    else:
        margins = np.asarray(rhs, dtype=float) - np.asarray(lhs, dtype=float)
        worst = int(np.argmin(margins))
        verdict = MajorizationVerdict(
            holds=bool(margins[worst] >= -tol),
            prefix_margins=margins,
            worst_index=worst,
            trace_gap=float(np.sum(rhs) - np.sum(lhs)),
        )
    md = dict(metadata or {})
    md["tol"] = tol
    return BoundReport(theorem_id, np.asarray(lhs, float), np.asarray(rhs, float),
                       verdict, relation, md)


def abs_ritz_diff(ritz_x, ritz_y):
    """|differences| of two non-increasing Ritz lists, resorted descending."""
    rx = np.asarray(ritz_x, float)
    ry = np.asarray(ritz_y, float)
    if rx.shape != ry.shape:
        raise DimensionMismatchError("Ritz lists differ in length")
    return sort_desc(np.abs(rx - ry))


def _inverse_singulars(T, floor=1e-12):
    """s(T^{-1}) descending, computed from s(T) without forming the inverse."""
    s = linalg.svd(T).singular_values
    if s[-1] <= floor * s[0] or s[-1] == 0.0:
        raise SingularTError(
            f"T is numerically singular (s_min/s_max = {s[-1] / s[0] if s[0] else 0.0:.3e})"
        )
    return 1.0 / s[::-1]


def eigenlist_distance_bound(C, D, T, tol=None):
    """|eigenvalue list of C - eigenvalue list of D| against
    s(T^{-1}) * s(CT - TD), for any invertible similarity factor T."""
    C = linalg.hermitian_part(C)
    D = linalg.hermitian_part(D)
    T = linalg.as_matrix(T, "T")
    k = C.shape[0]
    if D.shape[0] != k or T.shape != (k, k):
        raise DimensionMismatchError("C, D, T must be square of equal dimension")
    sTinv = _inverse_singulars(T)
    lhs = abs_ritz_diff(
        linalg.hermitian_eig(C).eigenvalues, linalg.hermitian_eig(D).eigenvalues
    )
    commutator_s = linalg.svd(C @ T - T @ D).singular_values
    rhs = sTinv * commutator_s
    return _report("eigenlist_distance", lhs, rhs, tol,
                   metadata={"d": k, "k": k})


def positive_T_distance_bound(C, D, T, tol=None):
    """s(C - D) against s(T^{-1}) * s(CT - TD) for positive definite T."""
    C = linalg.hermitian_part(C)
    D = linalg.hermitian_part(D)
    Th = linalg.hermitian_part(T)
    if float(np.max(np.abs(Th - np.asarray(T, complex)))) > 1e-12 * max(1.0, linalg.frobenius(T)):
        raise NotPositiveDefiniteError("T is not Hermitian")
    k = C.shape[0]
    if D.shape[0] != k or Th.shape[0] != k:
        raise DimensionMismatchError("C, D, T must be square of equal dimension")
    eigT = linalg.hermitian_eig(Th).eigenvalues
    if eigT[-1] <= 0.0:
        raise NotPositiveDefiniteError(f"smallest eigenvalue of T is {eigT[-1]:.3e}")
    lhs = linalg.svd(C - D).singular_values
    rhs = _inverse_singulars(Th) * linalg.svd(C @ Th - Th @ D).singular_values
    return _report("positive_t_distance", lhs, rhs, tol,
                   metadata={"d": k, "k": k})


class _Pair:
    """Shared per-instance quantities for the (A, X, Y) bounds."""

    def __init__(self, A, X, Y):
        self.A = linalg.hermitian_part(A)
        self.X = as_basis(X, "X")
        self.Y = as_basis(Y, "Y")
        d = self.A.shape[0]
        if self.X.shape[0] != d or self.Y.shape[0] != d:
            raise DimensionMismatchError("A, X, Y have incompatible dimensions")
        if self.X.shape[1] != self.Y.shape[1]:
            raise DimensionMismatchError("X and Y must have equal dimension")
        self.k = self.X.shape[1]
        self.theta = principal_angles(self.X, self.Y)
        self.rx = rayleigh(self.A, self.X)
        self.ry = rayleigh(self.A, self.Y)
        self.lhs = abs_ritz_diff(self.rx.ritz_values, self.ry.ritz_values)
        self._sum = None

    def require_acute(self):
        if self.theta[0] >= np.pi / 2 - ANGLE_GUARD:
            raise AnglesTooLargeError(
                f"largest principal angle {self.theta[0]:.6f} is too close to pi/2"
            )

    @property
    def sum_basis(self):
        if self._sum is None:
            self._sum = subspace_sum(self.X, self.Y)
        return self._sum

    def x_invariant(self):
        return _is_invariant(self.A, self.rx)

    def require_invariant(self):
        if not self.x_invariant():
            raise NotInvariantError(
                "X is not invariant: relative residual "
                f"{_relative_residual(self.A, self.rx):.3e}"
            )

    def cross_residual_singulars(self, basis, residual):
        """Singular values of P_basis applied to a residual matrix."""
        return linalg.svd(basis.conj().T @ residual).singular_values

    def compression_eigenvalues(self):
        return linalg.hermitian_eig(compress(self.A, self.sum_basis)).eigenvalues


def _relative_residual(A, ray):
    na = linalg.frobenius(A)
    return linalg.frobenius(ray.residual) / na if na > 0.0 else 0.0


def _is_invariant(A, ray):
    return _relative_residual(A, ray) <= INVARIANCE_TOL


def mixed_bound_cos(A, X, Y, tol=None):
    """Ritz difference against mutually projected residuals over cosines."""
    pair = _Pair(A, X, Y)
    pair.require_acute()
    s_yx = pair.cross_residual_singulars(pair.Y, pair.rx.residual)
    s_xy = pair.cross_residual_singulars(pair.X, pair.ry.residual)
    rhs = (s_yx + s_xy) / np.cos(pair.theta)
    return _report("mixed_cos", pair.lhs, rhs, tol,
                   metadata=_metadata(pair.A, pair.X, pair.Y, pair.theta))


def mixed_bound_tan(A, X, Y, tol=None):
    """Ritz difference against sum-space projected residuals times tangents."""
    pair = _Pair(A, X, Y)
    pair.require_acute()
    S = pair.sum_basis
    s_sx = pair.cross_residual_singulars(S, pair.rx.residual)
    s_sy = pair.cross_residual_singulars(S, pair.ry.residual)
    rhs = (s_sx + s_sy) * np.tan(pair.theta)
    return _report("mixed_tan", pair.lhs, rhs, tol,
                   metadata=_metadata(pair.A, pair.X, pair.Y, pair.theta, p=S.shape[1]))


def squared_mixed_bounds(A, X, Y, tol=None):
    """Squared versions of both mixed bounds (entrywise squares of the
    non-negative sides preserve submajorization)."""
    reports = []
    for base in (mixed_bound_cos(A, X, Y, tol), mixed_bound_tan(A, X, Y, tol)):
        lhs2 = apply_monotone_convex(base.lhs)
        rhs2 = apply_monotone_convex(base.rhs)
        reports.append(
            _report(base.theorem_id + "_squared", lhs2, rhs2, tol,
                    metadata=dict(base.metadata))
        )
    return tuple(reports)


def residual_projection_bound(A, X, Y, tol=None):
    """s(P_X R_Y) against s(P_{X+Y} R_Y) * sines of the angles."""
    pair = _Pair(A, X, Y)
    lhs = pair.cross_residual_singulars(pair.X, pair.ry.residual)
    s_sy = pair.cross_residual_singulars(pair.sum_basis, pair.ry.residual)
    rhs = s_sy * np.sin(pair.theta)
    return _report("residual_projection", lhs, rhs, tol,
                   metadata=_metadata(pair.A, pair.X, pair.Y, pair.theta))


def _spread_times_sin(pair, power=1):
    """First-k spread entries times sin(theta)^power, with the sign guard.

    A negative spread entry can only pair with a structurally zero angle;
    if it pairs with a clearly nonzero sine the instance contradicts the
    theory and is flagged as a hard violation rather than clamped.
    """
    spread = spectral_spread(pair.A, pair.sum_basis).values[: pair.k]
    sins = np.sin(pair.theta) ** power
    bad = (spread < -1e-10) & (sins > 1e-6)
    if np.any(bad):
        i = int(np.nonzero(bad)[0][0])
        raise InvariantViolationError(
            f"negative spread entry {spread[i]:.3e} paired with sin^..={sins[i]:.3e} at index {i}"
        )
    return spread * sins


def apriori_spread_partial(A, X, Y, tol=None):
    """s(P_X R_Y) against spread of the sum space times sines."""
    pair = _Pair(A, X, Y)
    lhs = pair.cross_residual_singulars(pair.X, pair.ry.residual)
    rhs = _spread_times_sin(pair)
    return _report("spread_partial", lhs, rhs, tol,
                   metadata=_metadata(pair.A, pair.X, pair.Y, pair.theta,
                                      p=pair.sum_basis.shape[1]))


def apriori_mixed_theorem(A, X, Y, tol=None):
    """Ritz difference against 2 * spread * sin / cos."""
    pair = _Pair(A, X, Y)
    pair.require_acute()
    rhs = 2.0 * _spread_times_sin(pair) / np.cos(pair.theta)
    return _report("apriori_mixed", pair.lhs, rhs, tol,
                   metadata=_metadata(pair.A, pair.X, pair.Y, pair.theta,
                                      p=pair.sum_basis.shape[1]))


def _depth_vector(pair):
    """(eigenvalue_i - smallest eigenvalue) of the sum-space compression, first k."""
    vals = pair.compression_eigenvalues()
    return vals[: pair.k] - vals[-1]


def apriori_invariant_quadratic(A, X, Y, tol=None):
    """Quadratic-in-sin bounds available when X is invariant.

    Returns two reports: the residual-projection estimate
    s(P_X R_Y) <=_w 2 * depth * sin^2, and the Ritz-difference bound with
    the extra 1/cos factor.
    """
    pair = _Pair(A, X, Y)
    pair.require_invariant()
    pair.require_acute()
    depth = _depth_vector(pair)
    sin2 = np.sin(pair.theta) ** 2
    md = _metadata(pair.A, pair.X, pair.Y, pair.theta, p=pair.sum_basis.shape[1])
    prop = _report("residual_quadratic", pair.cross_residual_singulars(pair.X, pair.ry.residual),
                   2.0 * depth * sin2, tol, metadata=md)
    theorem = _report("apriori_invariant", pair.lhs,
                      2.0 * depth * sin2 / np.cos(pair.theta), tol, metadata=md)
    return prop, theorem


def apriori_constant_corollary(A, X, Y, invariant=False, tol=None):
    """Scalar-prefactor variants: 2 / cos(theta_1) in front, and the
    2*sqrt(2) specialization when theta_1 <= pi/4.

    Returns a list of reports (spread form always; quadratic forms when
    ``invariant`` is set, after validating invariance).
    """
    pair = _Pair(A, X, Y)
    pair.require_acute()
    if invariant:
        pair.require_invariant()
    prefactor = 2.0 / math.cos(pair.theta[0])
    spread_sin = _spread_times_sin(pair)
    md = _metadata(pair.A, pair.X, pair.Y, pair.theta,
                   p=pair.sum_basis.shape[1], prefactor=prefactor)
    reports = [_report("cor_constant_spread", pair.lhs, prefactor * spread_sin, tol, metadata=md)]
    if invariant:
        quad = _depth_vector(pair) * np.sin(pair.theta) ** 2
        reports.append(_report("cor_constant_invariant", pair.lhs, prefactor * quad, tol, metadata=md))
    if pair.theta[0] <= np.pi / 4 + 1e-12:
        sqrt8 = 2.0 * math.sqrt(2.0)
        reports.append(_report("cor_sqrt8_spread", pair.lhs, sqrt8 * spread_sin, tol, metadata=md))
        if invariant:
            reports.append(_report("cor_sqrt8_invariant", pair.lhs, sqrt8 * quad, tol, metadata=md))
    return reports


def is_top_k(A, X, tol=1e-8):
    """Whether the (invariant) span of X carries the k largest eigenvalues."""
    pair = _Pair(A, X, X)
    eig_top = linalg.hermitian_eig(pair.A).eigenvalues[: pair.k]
    scale = max(1.0, float(np.max(np.abs(eig_top))))
    return float(np.max(np.abs(pair.rx.ritz_values - eig_top))) <= tol * scale


def fem_reference_bounds(A, X, Y, invariant=False, top_k=None, tol=None):
    """Prior-work comparison bounds based on the total width of the
    sum-space spectrum (and, for a top-k invariant X, the signed variant).

    Returns a list of reports; the quadratic form requires ``invariant``,
    the signed form additionally requires X to span the top-k eigenvectors
    (``top_k=None`` detects this, ``True`` demands it and raises
    NotTopKError when violated, ``False`` omits the signed form).
    """
    pair = _Pair(A, X, Y)
    vals = pair.compression_eigenvalues()
    width = vals[0] - vals[-1]
    sins = np.sin(pair.theta)
    md = _metadata(pair.A, pair.X, pair.Y, pair.theta, p=pair.sum_basis.shape[1])
    reports = [_report("fem_apr1", pair.lhs, width * sins, tol, metadata=md)]
    if invariant:
        pair.require_invariant()
        reports.append(_report("fem_apr2", pair.lhs, width * sins ** 2, tol, metadata=md))
        if top_k is None:
            top_k = is_top_k(A, X)
        elif top_k and not is_top_k(A, X):
            raise NotTopKError("X does not span the top-k eigenvectors")
        if top_k:
            signed = pair.rx.ritz_values - pair.ry.ritz_values
            sign_ok = bool(np.min(signed) >= -(tol if tol is not None else default_tolerance(pair.lhs)))
            depth = _depth_vector(pair)
            rep = _report("fem_apr3", sort_desc(signed), depth * sins ** 2, tol,
                          metadata={**md, "sign_condition": sign_ok,
                                    "min_signed": float(np.min(signed))})
            if not sign_ok:
                rep = BoundReport(rep.theorem_id, rep.lhs, rep.rhs,
                                  MajorizationVerdict(False, rep.verdict.prefix_margins,
                                                      rep.verdict.worst_index,
                                                      rep.verdict.trace_gap),
                                  rep.relation, rep.metadata)
            reports.append(rep)
    return reports


def dkn_certificate(A, X, Y):
    """Separation certificate for the tan-theta theorems, or None.

    Requires X invariant and k < d. The interval is exactly the spectral
    range of the complement block, which yields the largest possible
    separation constant; ``None`` (all Ritz values outside by no positive
    margin) is a normal outcome, not an error.
    """
    pair = _Pair(A, X, Y)
    pair.require_invariant()
    d, k = pair.X.shape
    if k >= d:
        raise DimensionMismatchError("certificate needs k < d")
    comp_vals = linalg.hermitian_eig(compress(pair.A, orthocomplement(pair.X))).eigenvalues
    a, b = float(comp_vals[-1]), float(comp_vals[0])
    sides = []
    delta = math.inf
    for r in pair.ry.ritz_values:
        if r <= a:
            sides.append("below")
            delta = min(delta, a - r)
        elif r >= b:
            sides.append("above")
            delta = min(delta, r - b)
        else:
            return None
    if not delta > SEPARATION_FLOOR * max(1.0, abs(a), abs(b)):
        return None
    return DknCertificate(interval=(a, b), delta=float(delta), side_assignment=tuple(sides))


def _validate_certificate(pair, cert):
    a, b = cert.interval
    if not (a <= b and cert.delta > 0.0):
        raise InvalidCertificateError("malformed certificate")
    comp_vals = linalg.hermitian_eig(compress(pair.A, orthocomplement(pair.X))).eigenvalues
    if comp_vals[0] > b + CERT_TOL or comp_vals[-1] < a - CERT_TOL:
        raise InvalidCertificateError("complement spectrum leaves the certified interval")
    ritz = pair.ry.ritz_values
    if len(cert.side_assignment) != ritz.size:
        raise InvalidCertificateError("side assignment length mismatch")
    for r, side in zip(ritz, cert.side_assignment):
        if side == "below" and r > a - cert.delta + CERT_TOL:
            raise InvalidCertificateError(f"Ritz value {r:.6g} not below {a:.6g} - delta")
        if side == "above" and r < b + cert.delta - CERT_TOL:
            raise InvalidCertificateError(f"Ritz value {r:.6g} not above {b:.6g} + delta")


def tan_theta_classical(A, X, Y, cert, tol=None):
    """delta * tan(angles) against the residual singular values."""
    pair = _Pair(A, X, Y)
    pair.require_invariant()
    _validate_certificate(pair, cert)
    if pair.theta[0] >= np.pi / 2 - ANGLE_GUARD:
        # separation forces acute angles
        raise InvariantViolationError("separated instance produced a right angle")
    lhs = cert.delta * np.tan(pair.theta)
    rhs = pair.ry.residual_singulars
    return _report("tan_classical", lhs, rhs, tol,
                   metadata=_metadata(pair.A, pair.X, pair.Y, pair.theta, delta=cert.delta))


def compressed_dkn_certificate(A, X, Y):
    """Certificate of the problem compressed onto the sum space.

    The compressed complement is (X+Y) minus X; interlacing makes its
    spectral range no wider than the ambient complement's, so the
    compressed separation constant can only improve. Raises
    NoSeparationError when no positive constant exists (including the
    degenerate Y == X case, where the complement is empty).
    """
    pair = _Pair(A, X, Y)
    pair.require_invariant()
    S = pair.sum_basis
    p = S.shape[1]
    if p == pair.k:
        raise NoSeparationError("sum space equals X; compressed complement is empty")
    A_S = compress(pair.A, S)
    X_S = S.conj().T @ pair.X
    comp = orthocomplement(X_S)
    block_vals = linalg.hermitian_eig(compress(A_S, comp)).eigenvalues
    a, b = float(block_vals[-1]), float(block_vals[0])
    sides = []
    delta = math.inf
    for r in pair.ry.ritz_values:
        if r <= a:
            sides.append("below")
            delta = min(delta, a - r)
        elif r >= b:
            sides.append("above")
            delta = min(delta, r - b)
        else:
            raise NoSeparationError(
                f"compressed Ritz value {r:.6g} falls inside [{a:.6g}, {b:.6g}]"
            )
    if not delta > SEPARATION_FLOOR * max(1.0, abs(a), abs(b)):
        raise NoSeparationError("compressed separation constant is zero")
    return DknCertificate(interval=(a, b), delta=float(delta), side_assignment=tuple(sides))


def tan_theta_improved(A, X, Y, tol=None):
    """Tan-theta bound with the compressed separation constant.

    Returns (improved_report, ambient_report_or_None): the improved bound
    delta' * tan <=_w s(P_{X+Y} R_Y), and the same right side against the
    ambient delta when an ambient certificate exists. Checks delta' >=
    delta whenever both constants exist.
    """
    pair = _Pair(A, X, Y)
    compressed = compressed_dkn_certificate(A, X, Y)
    ambient = dkn_certificate(A, X, Y)
    if ambient is not None and compressed.delta < ambient.delta - 1e-10:
        raise InvariantViolationError(
            f"compressed constant {compressed.delta:.6g} below ambient {ambient.delta:.6g}"
        )
    rhs = pair.cross_residual_singulars(pair.sum_basis, pair.ry.residual)
    tan = np.tan(pair.theta)
    md = _metadata(pair.A, pair.X, pair.Y, pair.theta,
                   p=pair.sum_basis.shape[1],
                   delta=None if ambient is None else ambient.delta,
                   delta_prime=compressed.delta)
    improved = _report("tan_improved", compressed.delta * tan, rhs, tol, metadata=md)
    ambient_report = None
    if ambient is not None:
        ambient_report = _report("tan_improved_ambient", ambient.delta * tan, rhs, tol,
                                 metadata=md)
    return improved, ambient_report


def _family_report(theorem_id, lhs_values, rhs_matrix_singulars, transform, tol, metadata):
    """Norm-inequality-family report over Ky Fan k-norms and Schatten 1,2,inf."""
    lhs_tbl = uin_norms(lhs_values)
    rhs_tbl = uin_norms(rhs_matrix_singulars)
    lhs = lhs_tbl.values()
    rhs = transform(rhs_tbl.values())
    md = dict(metadata or {})
    md["norms"] = lhs_tbl.labels()
    return _report(theorem_id, lhs, rhs, tol, relation="norm_inequality_family", metadata=md)


def quadratic_aposteriori(A, X, Y, delta_used, theorem_id="quadratic_aposteriori", tol=None):
    """Norm-family quadratic bound: for every norm in the family,
    ||Ritz difference|| <= ||P_{X+Y} R_Y||^2 / delta_used."""
    if not delta_used > 0.0:
        raise InvalidCertificateError(f"separation constant must be positive, got {delta_used}")
    pair = _Pair(A, X, Y)
    pair.require_invariant()
    proj_res = pair.cross_residual_singulars(pair.sum_basis, pair.ry.residual)
    md = _metadata(pair.A, pair.X, pair.Y, pair.theta,
                   p=pair.sum_basis.shape[1], delta_used=float(delta_used))
    return _family_report(theorem_id, pair.lhs, proj_res,
                          lambda v: v * v / delta_used, tol, md)


def consecutive_eigenvalue_bound(A, Y, tol=None):
    """Quadratic bound for simultaneous approximation of consecutive
    eigenvalues by the Ritz values of a single probe subspace.

    Hypotheses (checked numerically, HypothesisFailedError otherwise):
    with j the largest index such that eigenvalue_j(A) exceeds the top
    Ritz value, every Ritz value i must be >= eigenvalue_{i+j}(A), and the
    gap eta = eigenvalue_j(A) - top Ritz value must be positive. The bound
    compares the Ritz values against eigenvalues j+1 .. j+k of A.
    """
    A = linalg.hermitian_part(A)
    Y = as_basis(Y, "Y")
    d, k = Y.shape
    if Y.shape[0] != A.shape[0]:
        raise DimensionMismatchError("Y and A have incompatible dimensions")
    dec = linalg.hermitian_eig(A)
    ry = rayleigh(A, Y)
    top_ritz = float(ry.ritz_values[0])
    # largest 1-based j <= d-k with eigenvalue_j > top Ritz value
    candidates = np.nonzero(dec.eigenvalues[: d - k] > top_ritz)[0]
    if candidates.size == 0:
        raise HypothesisFailedError("condition 1", "no eigenvalue above the top Ritz value")
    j = int(candidates[-1]) + 1
    shifted = dec.eigenvalues[j: j + k]
    if np.any(ry.ritz_values < shifted):
        raise HypothesisFailedError(
            "condition 2", "some Ritz value drops below its shifted eigenvalue"
        )
    eta = float(dec.eigenvalues[j - 1] - top_ritz)
    if not eta > 1e-10:
        raise HypothesisFailedError("eta", f"separation {eta:.3e} not positive")
    U = dec.eigenvectors[:, :j]
    deflated = Y - U @ (U.conj().T @ Y)
    X = linalg.orthonormalize(deflated, 1e-10)
    if X.shape[1] != k:
        raise HypothesisFailedError(
            "intersection", "Y meets the span of the leading eigenvectors"
        )
    S = subspace_sum(X, Y)
    lhs = abs_ritz_diff(shifted, ry.ritz_values)
    proj_res = linalg.svd(S.conj().T @ ry.residual).singular_values
    md = {"d": d, "k": k, "j": j, "eta": eta, "p": int(S.shape[1])}
    return _family_report("consecutive_eigenvalues", lhs, proj_res,
                          lambda v: v * v / eta, tol, md)


def conjectured_spread_bounds(A, X, Y, tol=None):
    """Experimental-only evaluation of the open conjectured bounds
    (spread times sin, and spread times sin^2 under invariance).

    The reports are marked experimental in their metadata and are never
    treated as must-hold by the harness.
    """
    pair = _Pair(A, X, Y)
    spread_sin = _spread_times_sin(pair)
    md = _metadata(pair.A, pair.X, pair.Y, pair.theta,
                   p=pair.sum_basis.shape[1], experimental=True)
    reports = [_report("conjecture_spread_sin", pair.lhs, spread_sin, tol, metadata=md)]
    if pair.x_invariant():
        spread_sin2 = _spread_times_sin(pair, power=2)
        reports.append(
            _report("conjecture_spread_sin_squared", pair.lhs, spread_sin2, tol, metadata=md)
        )
    return reports
