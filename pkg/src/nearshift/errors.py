"""Exception hierarchy shared across the package."""


class NearshiftError(Exception):
    """Base class for all package errors."""


class InvalidInputError(NearshiftError):
    """A value fails basic validation: non-finite, wrong shape, bad range."""


class PreconditionError(NearshiftError):
    """A mathematical precondition of the requested operation does not hold."""


class DegenerateDefectError(PreconditionError):
    """The defect space M minus (M intersect T*H) is zero-dimensional at truncation."""


class NumericError(NearshiftError):
    """A computation lost too much accuracy to be trusted (conditioning, residuals)."""


class TruncationError(NumericError):
    """The working truncation degree cannot support the requested computation."""
