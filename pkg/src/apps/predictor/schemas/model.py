from typing import Any, Dict, List, Tuple

import numpy as np
from pydantic import BaseModel, Field, field_validator, model_validator

from apps.predictor.constants import Activation
from config import settings
from constants.config import (
    CONTENT_PIXELS,
    FEATURE_DIM,
    FILTER_PARAMS,
    HIDDEN_SIZES,
    MODEL_VERSION,
    VALIDATION_FRACTION,
)
from core.constants import LossNorm, OptimizerType, Parameterization, ScheduleType
from core.utils import DomainModel, ReportModel


class TrainConfig(BaseModel):
    """
    Training hyperparameters, echoed into the model file.
    """

    epochs: int = Field(100, ge=1, description="Passes over the training split")
    learning_rate: float = Field(1e-3, gt=0.0, description="Initial step size")
    batch_size: int = Field(16, ge=1, description="Items per update")
    alpha: float = Field(
        default_factory=lambda: settings.CONTENT_ALPHA, ge=0.0, description="Content weight"
    )
    norm: LossNorm = Field(LossNorm.L1, description="Labels loss norm")
    seed: int = Field(default_factory=lambda: settings.SEED, description="Random seed")
    parameterization: Parameterization = Field(Parameterization.FILTER)
    optimizer: OptimizerType = Field(OptimizerType.ADAM)
    schedule: ScheduleType = Field(ScheduleType.STAGED)
    hidden_sizes: Tuple[int, ...] = Field(HIDDEN_SIZES, description="Hidden widths")
    content_pixels: int = Field(
        CONTENT_PIXELS, ge=1, description="Foreground pixels sampled per item"
    )
    validation_fraction: float = Field(VALIDATION_FRACTION, ge=0.0, lt=1.0)
    eps: float = Field(
        default_factory=lambda: settings.RIDGE_EPS, ge=0.0, description="Ridge for targets"
    )

    model_config = {"frozen": True}

    @field_validator("hidden_sizes")
    @classmethod
    def validate_hidden(cls, value: Tuple[int, ...]) -> Tuple[int, ...]:
        """
        Every hidden layer has at least one unit.
        """
        if any(width < 1 for width in value):
            raise ValueError("hidden layer widths must be >= 1")
        return tuple(int(width) for width in value)


class LossBreakdown(ReportModel):
    """Labels and content terms with ``total = labels + alpha * content``."""

    labels: float
    content: float
    alpha: float
    total: float

    @classmethod
    def combine(cls, labels: float, content: float, alpha: float) -> "LossBreakdown":
        return cls(
            labels=labels, content=content, alpha=alpha, total=labels + alpha * content
        )


class EpochRecord(ReportModel):
    """Per-epoch training summary."""

    epoch: int
    learning_rate: float
    train_total: float
    train_labels: float
    val_total: float
    val_labels: float


class PredictorModel(DomainModel):
    """
    Fully connected regressor from normalized features to 12 outputs.

    Hidden layers use tanh, the output layer is linear. ``weights[k]`` has shape
    (out, in).
    """

    layer_sizes: List[int] = Field(..., description="Widths from input to output")
    weights: List[np.ndarray] = Field(..., description="Per-layer (out, in) matrices")
    biases: List[np.ndarray] = Field(..., description="Per-layer bias vectors")
    activation: Activation = Field(Activation.TANH)
    feature_mean: np.ndarray = Field(..., description="Normalization offsets")
    feature_std: np.ndarray = Field(..., description="Normalization scales")
    parameterization: Parameterization = Field(Parameterization.FILTER)
    version: str = Field(MODEL_VERSION)
    config: Dict[str, Any] = Field(default_factory=dict, description="Training echo")
    history: List[EpochRecord] = Field(default_factory=list)

    @model_validator(mode="after")
    def validate_layers(self) -> "PredictorModel":
        """
        Shapes agree with layer sizes; input and output widths are fixed.
        """
        sizes = self.layer_sizes
        if sizes[0] != FEATURE_DIM or sizes[-1] != FILTER_PARAMS:
            raise ValueError(
                f"layer sizes must run from {FEATURE_DIM} to {FILTER_PARAMS}: {sizes}"
            )
        if len(self.weights) != len(sizes) - 1 or len(self.biases) != len(sizes) - 1:
            raise ValueError("one weight matrix and bias vector per layer required")
        for k, (w, b) in enumerate(zip(self.weights, self.biases)):
            if w.shape != (sizes[k + 1], sizes[k]) or b.shape != (sizes[k + 1],):
                raise ValueError(f"layer {k} has shape {w.shape}/{b.shape}")
            if not (np.all(np.isfinite(w)) and np.all(np.isfinite(b))):
                raise ValueError(f"layer {k} holds non-finite values")
        if self.feature_mean.shape != (FEATURE_DIM,) or self.feature_std.shape != (
            FEATURE_DIM,
        ):
            raise ValueError("normalization constants must have one value per feature")
        return self
