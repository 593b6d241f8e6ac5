from typing import Tuple

from pydantic import BaseModel, Field, field_validator

from apps.oracle.constants import (
    BRIGHTNESS_LIMITS,
    DEFAULT_BRIGHTNESS_RANGE,
    DEFAULT_GAIN_RANGE,
    DEFAULT_MIXING_RANGE,
    GAIN_LIMITS,
    MIXING_LIMITS,
    OracleErrorMessage,
)

Range = Tuple[float, float]


def _check_range(value: Range, limits: Range) -> Range:
    low, high = value
    if low > high:
        raise ValueError(f"{OracleErrorMessage.RANGE_ORDER}: {value}")
    if low < limits[0] or high > limits[1]:
        raise ValueError(f"{OracleErrorMessage.RANGE_BOUNDS}: {value} not in {limits}")
    return (float(low), float(high))


class JitterSpec(BaseModel):
    """
    Distribution of the random affine color jitter used to synthesize composites.

    The linear part is ``D C D`` with ``D = diag(sqrt(gain))`` and ``C`` a unit
    diagonal symmetric matrix whose off-diagonal magnitudes are drawn from
    ``mixing_range``; it is symmetric positive definite, so an unclipped jitter is
    exactly undone by an MKL filter.
    """

    gain_ranges: Tuple[Range, Range, Range] = Field(
        (DEFAULT_GAIN_RANGE,) * 3, description="Multiplicative gain per channel"
    )
    brightness_range: Range = Field(
        DEFAULT_BRIGHTNESS_RANGE, description="Additive shift per channel"
    )
    mixing_range: Range = Field(
        DEFAULT_MIXING_RANGE, description="Off-diagonal channel mixing strength"
    )
    seed: int = Field(0, description="Random seed")

    model_config = {"frozen": True}

    @field_validator("gain_ranges")
    @classmethod
    def validate_gains(cls, value: Tuple[Range, Range, Range]):
        """
        Each channel gain range is ordered and inside [0.5, 1.8].
        """
        return tuple(_check_range(r, GAIN_LIMITS) for r in value)

    @field_validator("brightness_range")
    @classmethod
    def validate_brightness(cls, value: Range) -> Range:
        """
        Shift range is ordered and inside [-0.25, 0.25].
        """
        return _check_range(value, BRIGHTNESS_LIMITS)

    @field_validator("mixing_range")
    @classmethod
    def validate_mixing(cls, value: Range) -> Range:
        """
        Mixing range is ordered and inside [0, 0.15].
        """
        return _check_range(value, MIXING_LIMITS)

    @classmethod
    def identity(cls, seed: int = 0) -> "JitterSpec":
        """Degenerate spec whose every draw is the identity map."""
        return cls(
            gain_ranges=((1.0, 1.0),) * 3,
            brightness_range=(0.0, 0.0),
            mixing_range=(0.0, 0.0),
            seed=seed,
        )
