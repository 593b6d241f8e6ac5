from apps.dataset.schemas.index import DatasetEntry, DatasetIndex
from apps.dataset.schemas.reports import BiasProbeReport, BiasProbeRow

__all__ = ["BiasProbeReport", "BiasProbeRow", "DatasetEntry", "DatasetIndex"]
