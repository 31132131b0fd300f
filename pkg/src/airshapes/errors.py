"""Exception hierarchy for the toolkit."""


class AirshapesError(Exception):
    """Base class for all toolkit errors."""


class RecordingParseError(AirshapesError):
    """A recording stream line could not be parsed."""

    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ValidationError(AirshapesError):
    """A domain invariant was violated (e.g. non-monotone timestamps)."""


class DegenerateInputError(AirshapesError):
    """Input geometry has no usable extent (all points coincident, etc.)."""


class GapError(AirshapesError):
    """Fingertip tracking dropout too long to interpolate across."""


class TrajectoryTooShortError(AirshapesError):
    """Trajectory shorter than the minimum feature window allows."""


class DimensionMismatchError(AirshapesError):
    """Feature/model dimensionality disagreement."""


class BankFormatError(AirshapesError):
    """Classifier bank stream is corrupt or carries an unsupported version."""


class UnknownLabelError(AirshapesError):
    """Shape label not present in the gesture dictionary."""


class ConfigError(AirshapesError):
    """Invalid experiment, training, or CLI configuration."""
