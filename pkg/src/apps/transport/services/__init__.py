from apps.transport.services.apply import (
    apply_filter,
    clip_gamut,
    clip_points,
    filter_clip_fraction,
    outside_cube,
    transport_cost,
)
from apps.transport.services.fit import fit_mkl
from apps.transport.services.smoothing import ema_smooth, smooth_sequence
from apps.transport.services.storage import (
    filter_from_obj,
    filter_to_json,
    load_filter,
    load_filter_sequence,
    save_filter,
    save_filter_sequence,
)

__all__ = [
    "apply_filter",
    "clip_gamut",
    "clip_points",
    "ema_smooth",
    "filter_clip_fraction",
    "filter_from_obj",
    "filter_to_json",
    "fit_mkl",
    "load_filter",
    "load_filter_sequence",
    "outside_cube",
    "save_filter",
    "save_filter_sequence",
    "smooth_sequence",
    "transport_cost",
]
