from apps.predictor.constants import PredictorErrorMessage
from core.exceptions import DataError


class EmptyDataset(DataError):
    """No usable training items."""

    message = PredictorErrorMessage.EMPTY_DATASET


class NonFiniteLoss(DataError):
    """Loss became NaN or infinite during training."""

    message = PredictorErrorMessage.NON_FINITE_LOSS


class ModelFormatError(DataError):
    """Model file is malformed or has an unknown version."""

    message = PredictorErrorMessage.MODEL_FORMAT
