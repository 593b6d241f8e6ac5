from apps.oracle.schemas.jitter import JitterSpec
from apps.oracle.schemas.triplet import CompositeTriplet

__all__ = ["CompositeTriplet", "JitterSpec"]
