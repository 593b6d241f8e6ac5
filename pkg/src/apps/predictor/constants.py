from enum import StrEnum


class PredictorErrorMessage(StrEnum):
    EMPTY_DATASET = "Training needs at least one triplet with ground truth"
    NON_FINITE_LOSS = "Training diverged: total loss is not finite"
    MODEL_FORMAT = "Malformed predictor model file"
    MODEL_VERSION = "Unsupported predictor model version"
    FEATURE_LENGTH = "Feature vector has the wrong length"
    INVALID_CONFIG = "Invalid training configuration"


class PredictorMessage(StrEnum):
    MODEL_SAVED = "Predictor model saved"
    TRAINING_DONE = "Training finished"


class Activation(StrEnum):
    """Hidden-layer nonlinearity tags stored in model files."""

    TANH = "tanh"


# Adam moment decay rates and denominator guard
ADAM_BETA1 = 0.9
ADAM_BETA2 = 0.999
ADAM_EPSILON = 1e-8

# Staged schedule: (fraction of epochs elapsed, cumulative multiplier)
STAGED_DROPS = ((0.25, 0.1), (0.55, 0.05))

# Step for the numeric Jacobian of the statistics parameterization
STATS_JACOBIAN_STEP = 1e-6

# Feature standard deviations below this are treated as constant features
FEATURE_STD_FLOOR = 1e-8
