"""Exception taxonomy.

Each leaf class maps to a distinct CLI exit code so shell pipelines can tell
configuration mistakes from numerical failures without parsing stderr.
"""


class PredictionError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(PredictionError):
    """A parameter violates its documented domain."""


class GridSizeError(ParameterError):
    """A frequency grid is missing bins, too small, or not a power of two."""


class DegenerateBandError(ParameterError):
    """The requested band contains no usable grid bins."""


class WindowMismatchError(ParameterError):
    """Two signals that must share a time window do not."""


class InsufficientDataError(PredictionError):
    """The signal window is too short for the requested evaluation."""


class CausalityLeakError(PredictionError):
    """The numerically inverted kernel leaks too much mass onto t < 0."""


class SaturationError(PredictionError):
    """The damping exponent would overflow double precision."""


class InternalConsistencyError(PredictionError):
    """A quantity violated an identity the construction guarantees."""
