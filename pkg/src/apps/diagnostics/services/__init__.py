from apps.diagnostics.services.bounds import (
    clip_error,
    clip_excursion,
    sample_source,
    error_bound_report,
)
from apps.diagnostics.services.metrics import (
    compute_metrics,
    darkness_flag,
    psnr_from_mse,
)

__all__ = [
    "clip_error",
    "clip_excursion",
    "compute_metrics",
    "darkness_flag",
    "psnr_from_mse",
    "sample_source",
    "error_bound_report",
]
