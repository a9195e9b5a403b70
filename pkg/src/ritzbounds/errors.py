"""Exception hierarchy for the whole package.

Every error raised by the library derives from :class:`RitzBoundsError` so
callers can catch one base class. The leaf names mirror the failure modes of
the individual operations (dimension checks, kernel convergence, theorem
preconditions, harness input validation).
"""


class RitzBoundsError(Exception):
    """Base class for all errors raised by this package."""


# --- dense linear algebra -------------------------------------------------

class NonFiniteError(RitzBoundsError):
    """Input contains NaN or infinite entries."""


class DimensionMismatchError(RitzBoundsError):
    """Operands have incompatible shapes."""


class NoConvergenceError(RitzBoundsError):
    """An iterative kernel exceeded its sweep cap."""


class ZeroMatrixError(RitzBoundsError):
    """Orthonormalization received a matrix of numerical rank zero."""


# --- majorization ---------------------------------------------------------

class DivisionByZeroError(RitzBoundsError):
    """Entrywise division hit a (near-)zero denominator."""

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"zero denominator at entry {index}")


class NegativeInputError(RitzBoundsError):
    """Operation requires entrywise non-negative input."""


class NegativeSingularValueError(RitzBoundsError):
    """A singular-value vector contained a negative entry."""


class PreconditionViolatedError(RitzBoundsError):
    """A stated hypothesis of the requested relation does not hold."""


# --- subspace geometry ----------------------------------------------------

class FullSpaceError(RitzBoundsError):
    """The orthogonal complement of the full space is zero-dimensional."""


class DegenerateCutError(RitzBoundsError):
    """An eigenvector selection splits a numerically repeated eigenvalue."""


# --- bound operations -----------------------------------------------------

class SingularTError(RitzBoundsError):
    """The similarity factor T is numerically singular."""


class NotPositiveDefiniteError(RitzBoundsError):
    """The factor T is not positive definite."""


class AnglesTooLargeError(RitzBoundsError):
    """The largest principal angle is too close to pi/2 for this bound."""


class NotInvariantError(RitzBoundsError):
    """A subspace required to be invariant has a non-negligible residual."""


class NoSeparationError(RitzBoundsError):
    """No positive separation constant exists for the given data."""


class InvalidCertificateError(RitzBoundsError):
    """A separation certificate does not validate against the instance."""


class HypothesisFailedError(RitzBoundsError):
    """A numerically checked hypothesis of a corollary failed."""

    def __init__(self, condition, message=None):
        self.condition = condition
        super().__init__(message or f"hypothesis failed: {condition}")


class NotTopKError(RitzBoundsError):
    """The subspace does not span the top-k eigenvectors."""


class InvariantViolationError(RitzBoundsError):
    """A relation the theory guarantees failed numerically.

    This is never expected on valid inputs; it flags either a defective
    instance or a bug, and test suites treat it as a hard failure.
    """


# --- harness / IO ---------------------------------------------------------

class SpecInvalidError(RitzBoundsError):
    """An instance specification is inconsistent."""


class GridInvalidError(RitzBoundsError):
    """A sweep grid contains angles outside (0, pi/2)."""


class ParseError(RitzBoundsError):
    """A matrix file could not be parsed.

    Carries ``location`` describing the offending line or field.
    """

    def __init__(self, message, location=None):
        self.location = location
        if location is not None:
            message = f"{message} (at {location})"
        super().__init__(message)
