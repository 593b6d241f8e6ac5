from enum import StrEnum


class DatasetLayout(StrEnum):
    """Sub-directories and manifest of a dataset root."""

    COMPOSITES = "composites"
    MASKS = "masks"
    REALS = "reals"
    INDEX = "index.csv"
    IMAGES = "images"


class DatasetErrorMessage(StrEnum):
    MISSING_MASK = "Composite has no matching mask"
    MISSING_COMPOSITE = "Index lists a name with no composite"
    NOT_A_DIRECTORY = "Dataset root is not a directory"
    MISSING_MODEL = "Method 'predictor' needs --model"
    INVALID_SIZES = "Sizes must be WIDTHxHEIGHT with positive integers"
    INVALID_REPETITIONS = "Repetitions must be >= 1"
    PROBE_METHOD = "Bias probe supports the 'ideal' and 'predictor' methods"
    DUPLICATE_NAME = "Dataset names must be unique"


class DatasetMessage(StrEnum):
    EVALUATION_DONE = "Evaluation written"
    PROBE_DONE = "Bias probe written"
    BENCH_DONE = "Benchmark finished"


IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")

AGGREGATE_COMMENT = (
    "# aggregate rows: per-image metric mean and standard error of that mean "
    "over items without error"
)

EVALUATION_COLUMNS = [
    "name",
    "method",
    "mse",
    "psnr",
    "fmse",
    "clip_fraction",
    "dark_flag",
    "error",
]
BIAS_PROBE_COLUMNS = ["name", "radius", "param_l1", "fmse_delta", "error"]
BENCH_COLUMNS = [
    "size",
    "iters_per_sec_median",
    "iters_per_sec_min",
    "iters_per_sec_max",
]
INDEX_COLUMNS = ["name", "split", "clip_fraction"]
