from typing import Optional

import numpy as np

from apps.imaging.services import masked_stats
from apps.oracle.schemas import CompositeTriplet
from apps.predictor.schemas import PredictorModel
from apps.predictor.services.features import extract_features
from apps.predictor.services.loss import output_to_filter
from apps.predictor.services.network import forward, model_layers, normalize
from apps.transport.schemas import MklFilter
from core.constants import Parameterization


def predict_output(model: PredictorModel, features: np.ndarray) -> np.ndarray:
    """Raw 12 outputs for one (67,) feature array."""
    outputs, _ = forward(model_layers(model), normalize(model, features)[None, :])
    return outputs[0]


def predict(
    model: PredictorModel, t: CompositeTriplet, eps: Optional[float] = None
) -> MklFilter:
    """Predict the harmonizing filter of a composite.

    Raises:
        MaskTooSmall: If foreground or background has fewer than 16 pixels
    """
    output = predict_output(model, extract_features(t).values)
    fg = None
    if model.parameterization == Parameterization.STATS:
        fg = masked_stats(t.composite, t.mask)
    return output_to_filter(output, model.parameterization, fg, eps)
