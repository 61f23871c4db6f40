"""Error types shared across the overtune package."""


class OvertuneError(Exception):
    """Base exception carrying a human message and a stable error code."""

    def __init__(self, message: str, code: str):
        self.message = message
        self.code = code
        super().__init__(message)


class ValidationError(OvertuneError):
    """Raised when a corpus, metric table or upload violates the input schema."""


class MetricError(OvertuneError):
    """Raised when a metric precondition is violated (empty trajectory, bad oracle)."""


class ParameterError(OvertuneError):
    """Raised when an analysis, simulation or selection parameter is out of range."""
