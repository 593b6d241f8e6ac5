from apps.diagnostics.schemas.reports import BoundReport, MetricReport

__all__ = ["BoundReport", "MetricReport"]
