from enum import StrEnum


class OracleErrorMessage(StrEnum):
    MISSING_GROUND_TRUTH = "Operation needs the real (ground-truth) image"
    RANGE_ORDER = "Range low bound must not exceed the high bound"
    RANGE_BOUNDS = "Range outside its allowed interval"


class OracleMessage(StrEnum):
    SYNTH_DONE = "Synthetic dataset written"
    CLEAN_DONE = "Cleaned dataset written"
    IDEAL_DONE = "Ideal filter fitted"
    CT_DONE = "Color-transfer filter fitted"


# Allowed intervals for jitter draws
GAIN_LIMITS = (0.5, 1.8)
BRIGHTNESS_LIMITS = (-0.25, 0.25)
MIXING_LIMITS = (0.0, 0.15)

# Defaults used for the bundled synthetic benchmark
DEFAULT_GAIN_RANGE = (0.7, 1.3)
DEFAULT_BRIGHTNESS_RANGE = (-0.08, 0.08)
DEFAULT_MIXING_RANGE = (0.0, 0.08)

# Jitter linear parts pivot around mid-gray so gains do not drag colors to black
JITTER_PIVOT = 0.5

# Every tenth synthetic item is tagged for the test split
TEST_SPLIT_PERIOD = 10
