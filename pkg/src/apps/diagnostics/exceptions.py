from apps.diagnostics.constants import DiagnosticsErrorMessage
from core.exceptions import DataError, UsageError


class EmptySamples(DataError):
    """Sample collection is empty."""

    message = DiagnosticsErrorMessage.EMPTY_SAMPLES


class InvalidSampleCount(UsageError):
    """Requested number of samples is not positive."""

    message = DiagnosticsErrorMessage.INVALID_SAMPLE_COUNT
