"""Exception types shared across the package.

ValueError subclasses signal bad input (CLI exit code 2); RuntimeError
subclasses signal numeric failure during an otherwise valid computation
(CLI exit code 3).
"""


class DomainError(ValueError):
    """Scalar argument outside the mathematical domain of a function."""


class ParameterError(ValueError):
    """Inadmissible space-parameter combination (alpha, beta, gamma)."""


class MeasureFormatError(ValueError):
    """Measure description fails schema validation; message carries the field path."""


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds a configured size cap."""


class DegenerateSampleError(RuntimeError):
    """Sampled moments contain exact zeros, so a log-log fit is impossible."""


class PrecisionError(RuntimeError):
    """Requested truncation is too short for the target accuracy."""


class QuadratureError(RuntimeError):
    """Quadrature self-check failed (cross-validated integrals disagree)."""
