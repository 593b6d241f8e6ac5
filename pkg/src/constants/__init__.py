from constants.config import (
    APPLY_TILE_ROWS,
    BINARY_FILTER_SUFFIX,
    CONTENT_PIXELS,
    DEFAULT_BENCH_SIZES,
    DEFAULT_SYNTH_COUNT,
    DEFAULT_SYNTH_SIZE,
    FEATURE_DIM,
    FILTER_JSON_FORMAT,
    FILTER_PARAMS,
    HIDDEN_SIZES,
    HISTOGRAM_BINS,
    MIN_REGION_PIXELS,
    MODEL_VERSION,
    PIXEL_SCALE,
    PSD_TOLERANCE,
    PSNR_CAP_DB,
    PSNR_CAP_MSE_RATIO,
    SINGULAR_FLOOR,
    VALIDATION_FRACTION,
)
from constants.messages import (
    DATA_ERROR,
    NON_FINITE_INPUT,
    NOT_POSITIVE_SEMIDEFINITE,
    SINGULAR_COVARIANCE,
    SOMETHING_WENT_WRONG,
    USAGE_ERROR,
    WRONG_SHAPE,
)

__all__ = [
    "APPLY_TILE_ROWS",
    "BINARY_FILTER_SUFFIX",
    "CONTENT_PIXELS",
    "DEFAULT_BENCH_SIZES",
    "DEFAULT_SYNTH_COUNT",
    "DEFAULT_SYNTH_SIZE",
    "FEATURE_DIM",
    "FILTER_JSON_FORMAT",
    "FILTER_PARAMS",
    "HIDDEN_SIZES",
    "HISTOGRAM_BINS",
    "MIN_REGION_PIXELS",
    "MODEL_VERSION",
    "PIXEL_SCALE",
    "PSD_TOLERANCE",
    "PSNR_CAP_DB",
    "PSNR_CAP_MSE_RATIO",
    "SINGULAR_FLOOR",
    "VALIDATION_FRACTION",
    # Messages
    "DATA_ERROR",
    "NON_FINITE_INPUT",
    "NOT_POSITIVE_SEMIDEFINITE",
    "SINGULAR_COVARIANCE",
    "SOMETHING_WENT_WRONG",
    "USAGE_ERROR",
    "WRONG_SHAPE",
]
