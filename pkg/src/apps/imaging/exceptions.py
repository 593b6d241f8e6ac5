from apps.imaging.constants import ImagingErrorMessage
from core.exceptions import DataError, UsageError


class UnsupportedFormat(DataError):
    """File is not a PNG or JPEG image."""

    message = ImagingErrorMessage.UNSUPPORTED_FORMAT


class DecodeError(DataError):
    """File was recognized but its pixel data could not be decoded."""

    message = ImagingErrorMessage.DECODE_ERROR


class ImageNotFound(DataError):
    """Image path does not exist."""

    message = ImagingErrorMessage.IMAGE_NOT_FOUND


class MaskTooSmall(DataError):
    """Masked region is below the minimum pixel count for statistics."""

    message = ImagingErrorMessage.MASK_TOO_SMALL


class ShapeMismatch(DataError):
    """Paired rasters differ in width or height."""

    message = ImagingErrorMessage.SHAPE_MISMATCH


class PixelRangeError(DataError):
    """Channel values fall outside the unit interval."""

    message = ImagingErrorMessage.OUT_OF_RANGE


class InvalidRadius(UsageError):
    """Negative dilation radius."""

    message = ImagingErrorMessage.INVALID_RADIUS


class InvalidThreshold(UsageError):
    """Mask threshold outside (0, 1)."""

    message = ImagingErrorMessage.INVALID_THRESHOLD
