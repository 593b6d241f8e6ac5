from apps.transport.constants import TransportErrorMessage
from core.exceptions import DataError, UsageError


class ParseError(DataError):
    """Filter file could not be parsed into 12 finite parameters."""

    message = TransportErrorMessage.PARSE_ERROR


class InvalidBeta(UsageError):
    """EMA coefficient outside [0, 1)."""

    message = TransportErrorMessage.INVALID_BETA
