"""Forward and backward passes of the fully connected regressor."""

from typing import List, Tuple

import numpy as np

from apps.predictor.schemas import PredictorModel

Layers = List[Tuple[np.ndarray, np.ndarray]]


def model_layers(model: PredictorModel) -> Layers:
    return list(zip(model.weights, model.biases))


def normalize(model: PredictorModel, features: np.ndarray) -> np.ndarray:
    """Standardize a (67,) or (B, 67) feature array with the model's constants."""
    return (features - model.feature_mean) / model.feature_std


def forward(layers: Layers, inputs: np.ndarray) -> Tuple[np.ndarray, List[np.ndarray]]:
    """Run a (B, in) batch through the network.

    Returns:
        Outputs of shape (B, 12) and the activations of every layer, inputs first,
        needed by ``backward``
    """
    activations = [inputs]
    h = inputs
    last = len(layers) - 1
    for k, (w, b) in enumerate(layers):
        h = h @ w.T + b
        if k < last:
            h = np.tanh(h)
        activations.append(h)
    return h, activations


def backward(layers: Layers, activations: List[np.ndarray], grad_out: np.ndarray) -> Layers:
    """Gradients of a scalar loss w.r.t. every (weight, bias) pair.

    Args:
        layers: Network parameters
        activations: As returned by ``forward``
        grad_out: d loss / d outputs, shape (B, 12)

    Returns:
        (d weight, d bias) per layer
    """
    grads: Layers = [None] * len(layers)  # type: ignore[list-item]
    delta = grad_out
    for k in range(len(layers) - 1, -1, -1):
        w, _ = layers[k]
        grads[k] = (delta.T @ activations[k], delta.sum(axis=0))
        if k > 0:
            h = activations[k]
            delta = (delta @ w) * (1.0 - h * h)
    return grads


def init_layers(
    sizes: List[int], identity_bias: np.ndarray, rng: np.random.Generator
) -> Layers:
    """Random hidden layers and a zero output layer whose bias is ``identity_bias``.

    The untrained network therefore outputs ``identity_bias`` for every input.
    """
    layers: Layers = []
    for fan_in, fan_out in zip(sizes[:-2], sizes[1:-1]):
        w = rng.normal(0.0, 1.0 / np.sqrt(fan_in), size=(fan_out, fan_in))
        layers.append((w, np.zeros(fan_out)))
    layers.append((np.zeros((sizes[-1], sizes[-2])), identity_bias.astype(np.float64)))
    return layers
