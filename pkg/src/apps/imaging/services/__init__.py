from apps.imaging.services.io import (
    load_image,
    load_mask,
    read_rgb,
    save_image,
    save_mask,
    to_uint8,
)
from apps.imaging.services.stats import (
    check_shapes,
    dilate_mask,
    masked_stats,
    stats_from_pixels,
)

__all__ = [
    "check_shapes",
    "dilate_mask",
    "load_image",
    "load_mask",
    "masked_stats",
    "read_rgb",
    "save_image",
    "save_mask",
    "stats_from_pixels",
    "to_uint8",
]
