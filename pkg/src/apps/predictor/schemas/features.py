from typing import Any

import numpy as np
from pydantic import Field, field_validator

from apps.predictor.constants import PredictorErrorMessage
from constants.config import FEATURE_DIM
from core.exceptions import DataError, NonFiniteInput
from core.utils import DomainModel


class FeatureVector(DomainModel):
    """
    Fixed-length description of a composite:

    - foreground mean (3) and upper-triangular covariance (6)
    - background mean (3) and upper-triangular covariance (6)
    - 8-bin per-channel normalized histograms, foreground then background (48)
    - foreground area fraction (1)
    """

    values: np.ndarray = Field(..., description="Feature values, shape (67,)")

    @field_validator("values", mode="before")
    @classmethod
    def validate_values(cls, value: Any) -> np.ndarray:
        """
        Exactly FEATURE_DIM finite values.
        """
        arr = np.asarray(value, dtype=np.float64).reshape(-1)
        if arr.size != FEATURE_DIM:
            raise DataError(
                f"{PredictorErrorMessage.FEATURE_LENGTH}: {arr.size} != {FEATURE_DIM}"
            )
        if not np.all(np.isfinite(arr)):
            raise NonFiniteInput()
        return arr
