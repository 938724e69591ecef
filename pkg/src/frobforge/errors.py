"""Exception hierarchy shared across the package."""


class FrobforgeError(Exception):
    """Base class for all package-specific errors."""


class ValidationError(FrobforgeError):
    """Malformed input: bad JSON, schema violation, ill-formed chart data."""


class AlgebraError(FrobforgeError):
    """Exact-arithmetic failure: division by zero polynomial, non-monic input,
    insufficient expansion order, integrability failure."""


class NumericError(FrobforgeError):
    """Numerical failure: tolerance not achievable, root finding stalled."""


class SemisimplicityError(NumericError):
    """Coinciding canonical coordinates: the point is not in the semisimple
    stratum at the working tolerance."""
