import logging
from typing import Optional

import numpy as np

from apps.imaging.exceptions import MaskTooSmall
from apps.imaging.schemas import Image, Mask
from apps.imaging.services import check_shapes
from apps.transport.schemas import MklFilter
from constants.config import APPLY_TILE_ROWS, MIN_REGION_PIXELS
from core.linalg3 import Vec3, as_vec3
from core.utils import ordered_map

logger = logging.getLogger(__name__)


def clip_gamut(v: np.ndarray) -> Vec3:
    """Component-wise clamp to [0, 1], the Euclidean projection onto the color cube."""
    return np.clip(as_vec3(v), 0.0, 1.0)


def clip_points(points: np.ndarray) -> np.ndarray:
    """``clip_gamut`` over an (..., 3) array."""
    return np.clip(points, 0.0, 1.0)


def outside_cube(points: np.ndarray) -> np.ndarray:
    """Boolean per point: True where any channel leaves [0, 1]."""
    return np.any((points < 0.0) | (points > 1.0), axis=-1)


def filter_clip_fraction(f: MklFilter, pixels: np.ndarray) -> float:
    """Fraction of (N, 3) colors whose unclipped image leaves the cube."""
    if pixels.shape[0] == 0:
        return 0.0
    return float(np.mean(outside_cube(f.map_points(pixels))))


def apply_filter(
    img: Image, mask: Mask, f: MklFilter, workers: Optional[int] = 1
) -> Image:
    """Map foreground pixels through ``clip(a @ x + s)``, copy background verbatim.

    Row bands are processed independently, so any worker count gives the same
    output.

    Args:
        img: Image to harmonize
        mask: Foreground selection
        f: Color filter
        workers: Pool size for row bands (``None`` means settings)

    Returns:
        New image with channels in [0, 1]

    Raises:
        ShapeMismatch: If image and mask dimensions differ
    """
    check_shapes(img, mask)
    src = img.pixels
    out = np.empty_like(src)
    a_t = np.ascontiguousarray(f.a.T)
    shift = f.s

    def _band(start: int) -> None:
        stop = min(start + APPLY_TILE_ROWS, img.height)
        block = src[start:stop]
        select = mask.bits[start:stop]
        mapped = block @ a_t
        mapped += shift
        np.clip(mapped, 0.0, 1.0, out=mapped)
        np.copyto(out[start:stop], np.where(select[:, :, None], mapped, block))

    ordered_map(_band, range(0, img.height, APPLY_TILE_ROWS), workers)
    return Image.trusted(out)


def transport_cost(before: Image, after: Image, mask: Mask) -> float:
    """Mean squared RGB displacement over foreground pixels.

    Raises:
        ShapeMismatch: If dimensions differ
        MaskTooSmall: If the foreground has fewer than 16 pixels
    """
    check_shapes(before, after, mask)
    count = mask.count
    if count < MIN_REGION_PIXELS:
        raise MaskTooSmall(f"{MaskTooSmall.message}: {count} < {MIN_REGION_PIXELS}")
    delta = after.pixels[mask.bits] - before.pixels[mask.bits]
    return float(np.mean(np.sum(delta * delta, axis=1)))
