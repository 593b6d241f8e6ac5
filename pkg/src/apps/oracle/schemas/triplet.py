from typing import Optional

from pydantic import Field, model_validator

from apps.imaging.schemas import Image, Mask
from apps.imaging.services import check_shapes
from apps.oracle.exceptions import MissingGroundTruth
from apps.transport.schemas import MklFilter
from core.utils import DomainModel


class CompositeTriplet(DomainModel):
    """Composite, its foreground mask and, when known, the real image."""

    composite: Image = Field(..., description="Image with the pasted foreground")
    mask: Mask = Field(..., description="Foreground selection")
    real: Optional[Image] = Field(None, description="Ground-truth image")
    name: str = Field("", description="Dataset stem")
    jitter: Optional[MklFilter] = Field(
        None, description="Affine map that produced a synthetic composite"
    )
    jitter_clip_fraction: Optional[float] = Field(
        None, description="Share of jittered pixels that needed clipping"
    )

    @model_validator(mode="after")
    def validate_shapes(self) -> "CompositeTriplet":
        """
        All rasters share dimensions.
        """
        rasters = [self.composite, self.mask]
        if self.real is not None:
            rasters.append(self.real)
        check_shapes(*rasters)
        return self

    def require_real(self) -> Image:
        """Return the real image or raise MissingGroundTruth."""
        if self.real is None:
            raise MissingGroundTruth(f"{MissingGroundTruth.message}: {self.name}")
        return self.real
