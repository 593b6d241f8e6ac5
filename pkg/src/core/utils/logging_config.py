"""Logging Configuration - Centralized logging setup for the application"""

import json
import logging
import logging.config
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

from config import settings


class StructuredFormatter(logging.Formatter):
    """Custom formatter for structured logging with JSON output."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as structured JSON."""
        log_entry = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno,
        }

        # Item name of a batch run, if any
        if hasattr(record, "item"):
            log_entry["item"] = record.item

        if hasattr(record, "extra_fields"):
            log_entry.update(record.extra_fields)

        if record.exc_info:
            log_entry["exception"] = self.formatException(record.exc_info)

        return json.dumps(log_entry, default=str)


def setup_logging(
    log_level: str = "INFO",
    log_file: Optional[str] = None,
    enable_console: bool = True,
    enable_file: bool = False,
) -> None:
    """Setup comprehensive logging configuration.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        log_file: Path to log file (optional)
        enable_console: Enable structured logging on standard error
        enable_file: Enable rotating file logging
    """
    if enable_file and log_file:
        Path(log_file).parent.mkdir(parents=True, exist_ok=True)

    loggers = {
        "": {"level": log_level, "handlers": [], "propagate": False},  # Root logger
        "apps": {"level": log_level, "handlers": [], "propagate": False},
        "core": {"level": log_level, "handlers": [], "propagate": False},
    }

    handlers = {}

    if enable_console:
        # Data goes to files and stdout; logs never do
        handlers["console"] = {
            "class": "logging.StreamHandler",
            "level": log_level,
            "formatter": "structured",
            "stream": "ext://sys.stderr",
        }

    if enable_file and log_file:
        handlers["file"] = {
            "class": "logging.handlers.RotatingFileHandler",
            "level": log_level,
            "formatter": "structured",
            "filename": log_file,
            "maxBytes": 10485760,  # 10MB
            "backupCount": 5,
        }

    formatters = {
        "structured": {"()": "core.utils.logging_config.StructuredFormatter"},
    }

    for logger_name in loggers:
        loggers[logger_name]["handlers"].extend(handlers.keys())

    logging.config.dictConfig(
        {
            "version": 1,
            "disable_existing_loggers": False,
            "formatters": formatters,
            "handlers": handlers,
            "loggers": loggers,
        }
    )

    logger = logging.getLogger(__name__)
    logger.debug(
        "Logging system initialized",
        extra={
            "extra_fields": {
                "log_level": log_level,
                "console_enabled": enable_console,
                "file_enabled": enable_file,
                "log_file": log_file,
            }
        },
    )


def log_performance_metric(
    logger: logging.Logger,
    metric_name: str,
    value: float,
    unit: str,
    tags: Optional[Dict[str, Any]] = None,
) -> None:
    """Log a performance metric.

    Args:
        logger: Logger instance
        metric_name: Name of the metric
        value: Metric value
        unit: Unit of measurement
        tags: Additional tags (optional)
    """
    metric_data: Dict[str, Any] = {
        "metric_name": metric_name,
        "value": value,
        "unit": unit,
    }
    if tags:
        metric_data["tags"] = tags

    logger.info(
        f"METRIC: {metric_name} = {value:.6g} {unit}",
        extra={"extra_fields": metric_data},
    )


def log_error_with_context(
    logger: logging.Logger,
    error: Exception,
    item: Optional[str] = None,
    context: Optional[Dict[str, Any]] = None,
    level: str = "ERROR",
) -> None:
    """Log an error with context information.

    Args:
        logger: Logger instance
        error: Exception to log
        item: Name of the batch item being processed (optional)
        context: Additional context (optional)
        level: Log level (default: ERROR)
    """
    error_data: Dict[str, Any] = {
        "error_type": type(error).__name__,
        "error_message": str(error),
    }
    if item:
        error_data["item"] = item
    if context:
        error_data["context"] = context

    logger.log(
        getattr(logging, level.upper()),
        f"ERROR: {type(error).__name__}: {error}",
        extra={"extra_fields": error_data},
    )


def init_default_logging() -> None:
    """Initialize logging from the application settings."""
    setup_logging(
        log_level=settings.LOG_LEVEL,
        log_file=settings.LOG_FILE,
        enable_console=settings.LOG_CONSOLE,
        enable_file=settings.LOG_TO_FILE,
    )
