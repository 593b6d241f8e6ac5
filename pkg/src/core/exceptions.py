from typing import Optional

from constants.messages import (
    DATA_ERROR,
    NON_FINITE_INPUT,
    NOT_POSITIVE_SEMIDEFINITE,
    SINGULAR_COVARIANCE,
    SOMETHING_WENT_WRONG,
    USAGE_ERROR,
)
from core.constants import ExitCode


class CustomException(Exception):
    """
    Base custom exception class for raising necessary exceptions in the app.

    Attributes:
        exit_code (int): The process exit code associated with the exception.
        message (str): The message associated with the exception.
    """

    exit_code = ExitCode.DATA_ERROR
    message = SOMETHING_WENT_WRONG

    def __init__(self, message: Optional[str] = None):
        """
        Initialize the custom exception with an optional message.

        Args:
            message (Optional[str]): The message to be associated with the exception.
        """
        if message:
            self.message = message
        super().__init__(self.message)


class UsageError(CustomException):
    """
    Custom exception for invalid flags or configuration (exit code 1).
    """

    exit_code = ExitCode.USAGE_ERROR
    message = USAGE_ERROR


class DataError(CustomException):
    """
    Custom exception for problems with input data or numerics (exit code 2).
    """

    exit_code = ExitCode.DATA_ERROR
    message = DATA_ERROR


class NonFiniteInput(DataError):
    """
    Raised when an array that must be finite holds NaN or infinity.
    """

    message = NON_FINITE_INPUT


class NotPositiveSemidefinite(DataError):
    """
    Raised when a matrix has an eigenvalue below the PSD tolerance.
    """

    message = NOT_POSITIVE_SEMIDEFINITE


class SingularCovariance(DataError):
    """
    Raised when a ridged covariance is still too close to singular to invert.
    """

    message = SINGULAR_COVARIANCE


def as_data_error(error: Exception) -> CustomException:
    """Return domain errors unchanged; wrap anything else in a DataError."""
    if isinstance(error, CustomException):
        return error
    wrapped = DataError(f"{type(error).__name__}: {error}")
    wrapped.__cause__ = error
    return wrapped
