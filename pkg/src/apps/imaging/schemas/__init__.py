from apps.imaging.schemas.raster import Image, Mask
from apps.imaging.schemas.stats import ColorStats

__all__ = ["Image", "Mask", "ColorStats"]
