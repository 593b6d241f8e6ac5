from typing import Any

import numpy as np
from pydantic import Field, field_validator

from apps.imaging.exceptions import PixelRangeError
from constants.messages import WRONG_SHAPE
from core.exceptions import DataError, NonFiniteInput
from core.utils import DomainModel


class Image(DomainModel):
    """RGB raster, float64 of shape (height, width, 3) with channels in [0, 1]."""

    pixels: np.ndarray = Field(..., description="Row-major RGB triples")

    @field_validator("pixels", mode="before")
    @classmethod
    def validate_pixels(cls, value: Any) -> np.ndarray:
        """
        Coerce to a C-contiguous float64 array and check shape, finiteness and range.
        """
        arr = np.ascontiguousarray(value, dtype=np.float64)
        if arr.ndim != 3 or arr.shape[2] != 3 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DataError(f"{WRONG_SHAPE}: image must be (H, W, 3), got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteInput()
        if arr.min() < 0.0 or arr.max() > 1.0:
            raise PixelRangeError()
        return arr

    @classmethod
    def trusted(cls, pixels: np.ndarray) -> "Image":
        """Wrap an array already known to satisfy the invariants, without checks."""
        return cls.model_construct(pixels=pixels)

    @property
    def height(self) -> int:
        return int(self.pixels.shape[0])

    @property
    def width(self) -> int:
        return int(self.pixels.shape[1])

    @property
    def shape(self) -> tuple:
        return (self.height, self.width)


class Mask(DomainModel):
    """Binary foreground indicator of shape (height, width); True marks foreground."""

    bits: np.ndarray = Field(..., description="Row-major booleans")

    @field_validator("bits", mode="before")
    @classmethod
    def validate_bits(cls, value: Any) -> np.ndarray:
        """
        Coerce to a 2-D boolean array.
        """
        arr = np.ascontiguousarray(value, dtype=bool)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DataError(f"{WRONG_SHAPE}: mask must be (H, W), got {arr.shape}")
        return arr

    @classmethod
    def trusted(cls, bits: np.ndarray) -> "Mask":
        """Wrap a boolean array without checks."""
        return cls.model_construct(bits=bits)

    @property
    def height(self) -> int:
        return int(self.bits.shape[0])

    @property
    def width(self) -> int:
        return int(self.bits.shape[1])

    @property
    def shape(self) -> tuple:
        return (self.height, self.width)

    @property
    def count(self) -> int:
        """Number of foreground pixels."""
        return int(np.count_nonzero(self.bits))

    @property
    def area_fraction(self) -> float:
        return self.count / self.bits.size

    def inverted(self) -> "Mask":
        return Mask.trusted(~self.bits)
