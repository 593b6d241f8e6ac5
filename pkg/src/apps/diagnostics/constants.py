from enum import StrEnum


class DiagnosticsErrorMessage(StrEnum):
    EMPTY_SAMPLES = "At least one sample is required"
    INVALID_SAMPLE_COUNT = "Sample count must be >= 1"


class DiagnosticsMessage(StrEnum):
    BOUND_WRITTEN = "Bound report written"
    DARK_OBJECT = "Foreground is very dark; gamut-corner clipping dominates the error"
    OUTSIDE_CLIP_REGIME = "Mapped colors leave [-1, 2]; the clip term is not a bound here"


# Per-coordinate distance outside [0, 1] up to which |z - clip(z)|^2 <= 3
CLIP_REGIME_EXCURSION = 1.0
