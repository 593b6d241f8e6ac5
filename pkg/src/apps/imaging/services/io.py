"""Decode and encode rasters.

Pillow identifies the container and decodes JPEG. PNGs are decoded with OpenCV
at their stored depth, since Pillow reduces 16-bit RGB to 8 bits.
"""

import logging
from pathlib import Path
from typing import Optional, Union

import cv2
import numpy as np
from PIL import Image as PILImage
from PIL import UnidentifiedImageError

from apps.imaging.constants import ImageFormat
from apps.imaging.exceptions import (
    DecodeError,
    ImageNotFound,
    InvalidThreshold,
    UnsupportedFormat,
)
from apps.imaging.schemas import Image, Mask
from config import settings
from core.exceptions import DataError

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _decode_png(path: Path) -> np.ndarray:
    raw = np.fromfile(str(path), dtype=np.uint8)
    try:
        data = cv2.imdecode(raw, cv2.IMREAD_ANYDEPTH | cv2.IMREAD_COLOR)
    except cv2.error as err:
        raise DecodeError(f"{DecodeError.message}: {path}") from err
    if data is None or not np.issubdtype(data.dtype, np.unsignedinteger):
        raise DecodeError(f"{DecodeError.message}: {path}")
    # uint8 scales by 255, uint16 by 65535
    scale = float(np.iinfo(data.dtype).max)
    return cv2.cvtColor(data, cv2.COLOR_BGR2RGB).astype(np.float64) / scale


def read_rgb(path: PathLike) -> np.ndarray:
    """Decode a PNG or JPEG file into a float64 (H, W, 3) array in [0, 1].

    Args:
        path: Image file

    Returns:
        Array scaled by the bit-depth maximum

    Raises:
        ImageNotFound: If the file does not exist
        UnsupportedFormat: If the file is not a PNG or JPEG
        DecodeError: If the pixel data is truncated or corrupt
    """
    path = Path(path)
    if not path.is_file():
        raise ImageNotFound(f"{ImageNotFound.message}: {path}")

    try:
        with PILImage.open(path) as img:
            fmt = img.format
            if fmt not in (ImageFormat.PNG, ImageFormat.JPEG):
                raise UnsupportedFormat(f"{UnsupportedFormat.message}: {path} ({fmt})")
            if fmt == ImageFormat.PNG:
                return _decode_png(path)
            img.load()
            rgb = np.asarray(img.convert("RGB"), dtype=np.float64)
    except UnidentifiedImageError as err:
        raise UnsupportedFormat(f"{UnsupportedFormat.message}: {path}") from err
    except (OSError, SyntaxError, ValueError) as err:
        raise DecodeError(f"{DecodeError.message}: {path}") from err

    return rgb / 255.0


def load_image(path: PathLike) -> Image:
    """Load an RGB image with channels in [0, 1]."""
    pixels = read_rgb(path)
    logger.debug(f"Loaded image - Path: {path}, Size: {pixels.shape[1]}x{pixels.shape[0]}")
    return Image.trusted(pixels)


def load_mask(path: PathLike, threshold: Optional[float] = None) -> Mask:
    """Load a binary mask.

    A pixel is foreground iff the mean of its channels, scaled to [0, 1], is
    strictly greater than ``threshold``.

    Args:
        path: Grayscale or RGB mask file
        threshold: Binarization threshold in (0, 1), defaults to settings

    Returns:
        Mask of the file's dimensions
    """
    threshold = settings.MASK_THRESHOLD if threshold is None else threshold
    if not 0.0 < threshold < 1.0:
        raise InvalidThreshold(f"{InvalidThreshold.message}: {threshold}")
    luminance = read_rgb(path).mean(axis=2)
    return Mask.trusted(luminance > threshold)


def to_uint8(pixels: np.ndarray) -> np.ndarray:
    return np.clip(np.rint(pixels * 255.0), 0, 255).astype(np.uint8)


def save_image(img: Image, path: PathLike, bit_depth: int = 8) -> Path:
    """Write an RGB PNG, creating parent directories.

    Args:
        img: Image to encode
        path: Target file
        bit_depth: 8 for outputs; 16 keeps synthetic corpora free of quantization

    Returns:
        The written path
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    if bit_depth == 16:
        data = np.clip(np.rint(img.pixels * 65535.0), 0, 65535).astype(np.uint16)
        if not cv2.imwrite(str(path), cv2.cvtColor(data, cv2.COLOR_RGB2BGR)):
            raise DataError(f"Could not encode {path}")
        return path
    PILImage.fromarray(to_uint8(img.pixels), mode="RGB").save(path, format="PNG")
    return path


def save_mask(mask: Mask, path: PathLike) -> Path:
    """Write a mask as an 8-bit grayscale PNG (0 or 255)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    data = np.where(mask.bits, 255, 0).astype(np.uint8)
    PILImage.fromarray(data, mode="L").save(path, format="PNG")
    return path
