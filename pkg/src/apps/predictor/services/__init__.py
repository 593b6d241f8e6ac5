from apps.predictor.services.features import channel_histograms, extract_features
from apps.predictor.services.inference import predict, predict_output
from apps.predictor.services.loss import (
    LossContext,
    content_term,
    identity_output,
    item_loss,
    labels_term,
    loss,
    output_to_filter,
)
from apps.predictor.services.storage import load_model, save_model
from apps.predictor.services.trainer import (
    PredictorTrainer,
    build_model,
    init_model,
    train,
)

__all__ = [
    "LossContext",
    "PredictorTrainer",
    "build_model",
    "channel_histograms",
    "content_term",
    "extract_features",
    "identity_output",
    "init_model",
    "item_loss",
    "labels_term",
    "load_model",
    "loss",
    "output_to_filter",
    "predict",
    "predict_output",
    "save_model",
    "train",
]
