from enum import StrEnum


class ImageFormat(StrEnum):
    """Container formats accepted on input (Pillow format names)."""

    PNG = "PNG"
    JPEG = "JPEG"


class ImagingErrorMessage(StrEnum):
    UNSUPPORTED_FORMAT = "Unsupported image format; expected 8/16-bit PNG or 8-bit JPEG"
    DECODE_ERROR = "Image file is truncated or corrupt"
    IMAGE_NOT_FOUND = "Image file not found"
    MASK_TOO_SMALL = "Selected region has too few pixels"
    SHAPE_MISMATCH = "Raster dimensions do not match"
    OUT_OF_RANGE = "Pixel values must lie in [0, 1]"
    INVALID_RADIUS = "Dilation radius must be >= 0"
    INVALID_THRESHOLD = "Mask threshold must be in (0, 1)"
