"""Vector (sub)majorization predicates and ordered-vector arithmetic.

The central object is the verdict of a comparison ``x <=_w y`` (prefix sums
of the non-increasing rearrangements), reported with per-prefix margins so
tests can distinguish "holds with slack" from "holds with near-equality".
Also provides the classical vector lemmas used as oracles by the bound
tests, and the unitarily invariant norm table (Ky Fan family plus Schatten
1, 2, inf) that makes norm-family statements finite.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    DivisionByZeroError,
    NegativeInputError,
    NegativeSingularValueError,
    NonFiniteError,
    PreconditionViolatedError,
)

DIV_FLOOR = 1e-300


@dataclass(frozen=True)
class MajorizationVerdict:
    """Outcome of a (sub)majorization comparison.

    margin_j = sum of the j+1 largest entries of y minus the same for x;
    the relation holds when the worst margin is >= -tol (and, for full
    majorization, the totals agree to tol). trace_gap = sum(y) - sum(x).
    """

    holds: bool
    prefix_margins: np.ndarray
    worst_index: int
    trace_gap: float

    @property
    def worst_margin(self):
        return float(self.prefix_margins[self.worst_index])


def _as_real_vector(x, name="vector"):
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-D, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise NonFiniteError(f"{name} contains non-finite entries")
    return v


def sort_desc(x):
    """Non-increasing rearrangement (stable: ties keep lower index first)."""
    v = _as_real_vector(x)
    return v[np.argsort(-v, kind="stable")]


def sort_asc(x):
    """Non-decreasing rearrangement (stable)."""
    v = _as_real_vector(x)
    return v[np.argsort(v, kind="stable")]


def _pair(x, y):
    vx = _as_real_vector(x, "x")
    vy = _as_real_vector(y, "y")
    if vx.shape != vy.shape:
        raise DimensionMismatchError(f"length mismatch: {vx.size} vs {vy.size}")
    if vx.size == 0:
        raise DimensionMismatchError("vectors must have length >= 1")
    return vx, vy


def submajorizes(x, y, tol=0.0):
    """Verdict of x <=_w y (x submajorized by y) with slack tol."""
    vx, vy = _pair(x, y)
    margins = np.cumsum(sort_desc(vy)) - np.cumsum(sort_desc(vx))
    worst = int(np.argmin(margins))
    return MajorizationVerdict(
        holds=bool(margins[worst] >= -tol),
        prefix_margins=margins,
        worst_index=worst,
        trace_gap=float(margins[-1]),
    )


def majorizes(x, y, tol=0.0):
    """Verdict of x <= y (majorization: submajorization plus equal totals)."""
    v = submajorizes(x, y, tol)
    holds = v.holds and abs(v.trace_gap) <= tol
    return MajorizationVerdict(holds, v.prefix_margins, v.worst_index, v.trace_gap)


def _combine(first, second):
    """Conjunction of two verdicts over the same length, margins pointwise min."""
    margins = np.minimum(first.prefix_margins, second.prefix_margins)
    worst = int(np.argmin(margins))
    gap = max((first.trace_gap, second.trace_gap), key=abs)
    return MajorizationVerdict(first.holds and second.holds, margins, worst, gap)


def entrywise_mul(x, y):
    vx, vy = _pair(x, y)
    return vx * vy


def entrywise_div(x, y):
    vx, vy = _pair(x, y)
    bad = np.nonzero(np.abs(vy) <= DIV_FLOOR)[0]
    if bad.size:
        raise DivisionByZeroError(int(bad[0]))
    return vx / vy


def apply_monotone_convex(x, kind="square"):
    """Apply a non-decreasing convex function entrywise.

    Such maps preserve submajorization between non-negative vectors, which
    is how the squared variants of the mixed bounds are derived. Only
    ``square`` is supported.
    """
    if kind != "square":
        raise ValueError(f"unsupported function tag {kind!r}")
    v = _as_real_vector(x)
    if np.any(v < 0.0):
        raise NegativeInputError("square variant requires entrywise non-negative input")
    return v * v


def lemma_props_oracle(x, y, z=None, item=1, tol=0.0):
    """Direct evaluation of the classical rearrangement lemmas.

    item 1: x_desc + y_asc  <=  x + y  <=  x_desc + y_desc   (majorization chain)
    item 2: x <=_w y with y, z non-increasing  =>  x + z <=_w y + z
    item 3: (x,y >= 0) x_desc*y_asc <=_w x*y <=_w x_desc*y_desc
    item 4: (x,y,z >= 0, y,z non-increasing) x <=_w y  =>  x*z <=_w y*z

    For items 2 and 4 the antecedent is a precondition; the verdict covers
    the consequent.
    """
    vx = _as_real_vector(x, "x")
    vy = _as_real_vector(y, "y")
    if vx.shape != vy.shape:
        raise DimensionMismatchError("x and y must have equal length")
    if item in (3, 4) and (np.any(vx < 0) or np.any(vy < 0)):
        raise PreconditionViolatedError(f"item {item} requires non-negative x and y")

    if item == 1:
        left = majorizes(sort_desc(vx) + sort_asc(vy), vx + vy, tol)
        right = majorizes(vx + vy, sort_desc(vx) + sort_desc(vy), tol)
        return _combine(left, right)
    if item == 3:
        left = submajorizes(sort_desc(vx) * sort_asc(vy), vx * vy, tol)
        right = submajorizes(vx * vy, sort_desc(vx) * sort_desc(vy), tol)
        return _combine(left, right)

    if item not in (2, 4):
        raise PreconditionViolatedError(f"unknown item {item}")
    if z is None:
        raise PreconditionViolatedError(f"item {item} requires z")
    vz = _as_real_vector(z, "z")
    if vz.shape != vx.shape:
        raise DimensionMismatchError("z must match the length of x and y")
    if np.any(np.diff(vy) > 0) or np.any(np.diff(vz) > 0):
        raise PreconditionViolatedError(f"item {item} requires y and z non-increasing")
    if not submajorizes(vx, vy, tol).holds:
        raise PreconditionViolatedError(f"item {item} requires x submajorized by y")
    if item == 2:
        return submajorizes(vx + vz, vy + vz, tol)
    if np.any(vz < 0):
        raise PreconditionViolatedError("item 4 requires non-negative z")
    return submajorizes(vx * vz, vy * vz, tol)


@dataclass(frozen=True)
class NormTable:
    """Unitarily invariant norms of a non-negative spectrum.

    ky_fan[j] is the sum of the j+1 largest values; the Ky Fan family is
    the complete generating set, the Schatten norms are cross-checks.
    """

    ky_fan: np.ndarray
    schatten_1: float
    schatten_2: float
    schatten_inf: float

    def labels(self):
        return [f"ky_fan_{j + 1}" for j in range(self.ky_fan.size)] + [
            "schatten_1", "schatten_2", "schatten_inf",
        ]

    def values(self):
        return np.concatenate(
            [self.ky_fan, [self.schatten_1, self.schatten_2, self.schatten_inf]]
        )


def uin_norms(s):
    """Norm table of a vector of singular values (entrywise >= 0)."""
    v = _as_real_vector(s, "singular values")
    if np.any(v < 0.0):
        raise NegativeSingularValueError("singular values must be non-negative")
    v = sort_desc(v) if v.size else v
    if v.size == 0:
        return NormTable(np.zeros(0), 0.0, 0.0, 0.0)
    kf = np.cumsum(v)
    return NormTable(
        ky_fan=kf,
        schatten_1=float(kf[-1]),
        schatten_2=float(np.sqrt(np.sum(v * v))),
        schatten_inf=float(v[0]),
    )


def default_tolerance(y):
    """Verdict slack used by the harness: 1e-9 * max(1, ||y||_inf * k).

    Prefix sums accumulate rounding roughly linearly in the length k.
    """
    v = np.asarray(y, dtype=np.float64)
    peak = float(np.max(np.abs(v))) if v.size else 0.0
    return 1e-9 * max(1.0, peak * v.size)
