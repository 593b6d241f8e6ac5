import logging

from core.utils.console import ColoredOutput, console
from core.utils.pool import ordered_map, resolve_workers
from core.utils.schema import DomainModel, ReportModel

logger = logging.getLogger("core")

__all__ = [
    "ColoredOutput",
    "DomainModel",
    "ReportModel",
    "console",
    "logger",
    "ordered_map",
    "resolve_workers",
]
