import json
import logging
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import ValidationError

from apps.predictor.constants import PredictorErrorMessage
from apps.predictor.exceptions import ModelFormatError
from apps.predictor.schemas import PredictorModel
from constants.config import MODEL_VERSION

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def model_to_dict(model: PredictorModel) -> dict:
    """JSON-ready model: weights flattened row-major."""
    return {
        "version": model.version,
        "layer_sizes": list(model.layer_sizes),
        "activation": str(model.activation),
        "parameterization": str(model.parameterization),
        "weights": [w.reshape(-1).tolist() for w in model.weights],
        "biases": [b.tolist() for b in model.biases],
        "feature_mean": model.feature_mean.tolist(),
        "feature_std": model.feature_std.tolist(),
        "config": model.config,
        "history": [record.model_dump() for record in model.history],
    }


def model_from_dict(data: dict) -> PredictorModel:
    """Inverse of ``model_to_dict``.

    Raises:
        ModelFormatError: On unknown version, missing keys or inconsistent shapes
    """
    if not isinstance(data, dict):
        raise ModelFormatError()
    if data.get("version") != MODEL_VERSION:
        raise ModelFormatError(
            f"{PredictorErrorMessage.MODEL_VERSION}: {data.get('version')!r}"
        )
    try:
        sizes = [int(size) for size in data["layer_sizes"]]
        weights = [
            np.asarray(flat, dtype=np.float64).reshape(sizes[k + 1], sizes[k])
            for k, flat in enumerate(data["weights"])
        ]
        return PredictorModel(
            layer_sizes=sizes,
            weights=weights,
            biases=[np.asarray(b, dtype=np.float64) for b in data["biases"]],
            activation=data.get("activation", "tanh"),
            feature_mean=np.asarray(data["feature_mean"], dtype=np.float64),
            feature_std=np.asarray(data["feature_std"], dtype=np.float64),
            parameterization=data.get("parameterization", "filter"),
            version=data["version"],
            config=data.get("config", {}),
            history=data.get("history", []),
        )
    except (KeyError, IndexError, TypeError, ValueError, ValidationError) as err:
        raise ModelFormatError(f"{ModelFormatError.message}: {err}") from err


def save_model(model: PredictorModel, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(model_to_dict(model)), encoding="utf-8")
    logger.info(f"Predictor model saved - Path: {path}")
    return path


def load_model(path: PathLike) -> PredictorModel:
    """Read a model file.

    Raises:
        ModelFormatError: If the file is missing, not JSON or not a model
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError as err:
        raise ModelFormatError(f"{ModelFormatError.message}: {path} not found") from err
    except (json.JSONDecodeError, UnicodeDecodeError) as err:
        raise ModelFormatError(f"{ModelFormatError.message}: {path}: {err}") from err
    return model_from_dict(data)
