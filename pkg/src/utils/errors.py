"""Exception hierarchy for the entropy-production toolkit."""
from typing import Optional


class EntropyToolkitError(Exception):
    """Root of every error raised by the toolkit."""


class StateValidationError(EntropyToolkitError, ValueError):
    """A matrix failed one of the density-matrix invariants."""

    def __init__(self, message: str, magnitude: Optional[float] = None):
        super().__init__(message)
        self.magnitude = magnitude


class ShapeError(StateValidationError):
    pass


class NotHermitianError(StateValidationError):
    pass


class TraceDeviationError(StateValidationError):
    pass


class NegativeEigenvalueError(StateValidationError):
    pass


class ParameterOutOfRangeError(EntropyToolkitError, ValueError):
    pass


class AngleOutOfRangeError(ParameterOutOfRangeError):
    pass


class CoherenceOutOfRangeError(ParameterOutOfRangeError):
    pass


class MismatchedTemperatureError(EntropyToolkitError, ValueError):
    """Two channels with different p cannot be composed into one GAD channel."""


class StepSizeInvalidError(EntropyToolkitError, ValueError):
    pass


class IndeterminateError(EntropyToolkitError, ArithmeticError):
    """Raised for infinity minus infinity between two relative entropies."""


class ConsistencyError(EntropyToolkitError):
    """A computed quantity violated a guaranteed bound beyond numerical noise."""


class ConfigInvalidError(EntropyToolkitError, ValueError):
    pass


class OutputError(EntropyToolkitError, OSError):
    pass
