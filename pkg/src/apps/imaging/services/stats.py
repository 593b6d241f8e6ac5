import logging

import cv2
import numpy as np

from apps.imaging.exceptions import InvalidRadius, MaskTooSmall, ShapeMismatch
from apps.imaging.schemas import ColorStats, Image, Mask
from constants.config import MIN_REGION_PIXELS

logger = logging.getLogger(__name__)


def check_shapes(*rasters) -> None:
    """Raise ShapeMismatch unless every image/mask has the same (height, width)."""
    shapes = {raster.shape for raster in rasters}
    if len(shapes) > 1:
        raise ShapeMismatch(f"{ShapeMismatch.message}: {sorted(shapes)}")


def stats_from_pixels(
    pixels: np.ndarray, min_count: int = MIN_REGION_PIXELS
) -> ColorStats:
    """Two-pass mean and population covariance of an (N, 3) pixel array.

    Args:
        pixels: Colors, one per row
        min_count: Smallest accepted population

    Returns:
        ColorStats with ``count = N``

    Raises:
        MaskTooSmall: If N < min_count
    """
    count = int(pixels.shape[0])
    if count < max(min_count, 1):
        raise MaskTooSmall(
            f"{MaskTooSmall.message}: {count} < {max(min_count, 1)} pixels"
        )
    mean = pixels.mean(axis=0)
    centered = pixels - mean
    cov = centered.T @ centered / count
    return ColorStats(mean=mean, cov=cov, count=count)


def masked_stats(img: Image, mask: Mask, invert: bool = False) -> ColorStats:
    """Color statistics of the foreground, or of the background when ``invert``.

    Raises:
        ShapeMismatch: If image and mask dimensions differ
        MaskTooSmall: If the region has fewer than 16 pixels
    """
    check_shapes(img, mask)
    select = ~mask.bits if invert else mask.bits
    return stats_from_pixels(img.pixels[select])


def dilate_mask(mask: Mask, radius: int) -> Mask:
    """Dilate with a square structuring element of side ``2 * radius + 1``.

    Radius 0 returns the input unchanged; pixels beyond the border are ignored.
    """
    if radius < 0:
        raise InvalidRadius(f"{InvalidRadius.message}: {radius}")
    if radius == 0:
        return mask
    # A kernel wider than the raster behaves like one exactly as wide
    radius = min(radius, max(mask.shape))
    kernel = np.ones((2 * radius + 1, 2 * radius + 1), dtype=np.uint8)
    dilated = cv2.dilate(mask.bits.astype(np.uint8), kernel)
    return Mask.trusted(dilated.astype(bool))
