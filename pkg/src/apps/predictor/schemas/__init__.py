from apps.predictor.schemas.features import FeatureVector
from apps.predictor.schemas.model import (
    EpochRecord,
    LossBreakdown,
    PredictorModel,
    TrainConfig,
)

__all__ = [
    "EpochRecord",
    "FeatureVector",
    "LossBreakdown",
    "PredictorModel",
    "TrainConfig",
]
