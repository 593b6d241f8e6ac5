from apps.dataset.constants import DatasetErrorMessage
from core.exceptions import DataError, UsageError


class DatasetIndexError(DataError):
    """Dataset layout is inconsistent (e.g. a composite without mask)."""

    message = DatasetErrorMessage.MISSING_MASK


class MissingModel(UsageError):
    """Predictor method requested without a model file."""

    message = DatasetErrorMessage.MISSING_MODEL


class InvalidBenchConfig(UsageError):
    """Bench sizes or repetitions are malformed."""

    message = DatasetErrorMessage.INVALID_SIZES


class InvalidProbeMethod(UsageError):
    """Bias probe called with a method that yields no fitted filter."""

    message = DatasetErrorMessage.PROBE_METHOD
