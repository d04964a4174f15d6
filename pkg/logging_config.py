#!/usr/bin/env python3

# This file is part of latspec.
#
# latspec is free software: you can redistribute it and/or modify it under the terms of the GNU General Public License as published by the Free Software Foundation, either version 3 of the License, or (at your option) any later version.
#
# latspec is distributed in the hope that it will be useful, but WITHOUT ANY WARRANTY; without even the implied warranty of MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE. See the GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License along with latspec. If not, see <https://www.gnu.org/licenses/>.

"""
Logging configuration for latspec.

Log records go to stderr; stdout is reserved for results.
"""

import json
import logging
import os
import sys
from datetime import datetime, timezone
from typing import Any, List, Optional

# Global logger instance
_logger = None

# Per-round engine detail, below DEBUG so -v stays readable
TRACE = 5
logging.addLevelName(TRACE, "TRACE")

# Log levels mapping
LOG_LEVELS = {
    "TRACE": TRACE,
    "DEBUG": logging.DEBUG,
    "INFO": logging.INFO,
    "WARNING": logging.WARNING,
    "ERROR": logging.ERROR,
    "CRITICAL": logging.CRITICAL
}

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Status channel for long enumerations; shown at the default log level
PROGRESS_LOGGER = 'latspec.progress'


class StructuredLogFormatter(logging.Formatter):
    """Formatter for structured JSON logs."""

    def format(self, record: logging.LogRecord) -> str:
        """Format log record as JSON."""
        log_data = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "level": record.levelname,
            "name": record.name,
            "message": record.getMessage(),
            "module": record.module,
            "function": record.funcName,
            "line": record.lineno
        }

        if record.exc_info:
            log_data["exception"] = {
                "type": record.exc_info[0].__name__,
                "message": str(record.exc_info[1]),
                "traceback": self.formatException(record.exc_info)
            }

        # Context passed through log_with_context
        if hasattr(record, "context"):
            log_data.update(record.context)

        return json.dumps(log_data)


def configure_logging(verbose: bool = False, log_file: Optional[str] = None,
                      log_format: Optional[str] = None, structured: bool = False,
                      log_level: Optional[str] = None, progress: bool = True) -> logging.Logger:
    """
    Configure the application logger.

    Args:
        verbose: Whether to enable verbose logging (DEBUG level)
        log_file: Path to log file (None for stderr only)
        log_format: Format string for log messages
        structured: Whether to use structured JSON logging
        log_level: Log level (TRACE, DEBUG, INFO, WARNING, ERROR, CRITICAL)
        progress: Whether progress lines reach stderr regardless of the log level

    Returns:
        Configured logger
    """
    if verbose:
        level = logging.DEBUG
    elif log_level and log_level.upper() in LOG_LEVELS:
        level = LOG_LEVELS[log_level.upper()]
    else:
        level = logging.WARNING

    logger = logging.getLogger('latspec')
    logger.setLevel(level)
    logger.propagate = False

    if logger.handlers:
        logger.handlers.clear()

    if structured:
        formatter: logging.Formatter = StructuredLogFormatter()
    else:
        formatter = logging.Formatter(log_format or DEFAULT_FORMAT)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(level)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if log_file:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir)

        file_handler = logging.FileHandler(log_file)
        file_handler.setLevel(level)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    _configure_progress(progress, formatter, logger.handlers[1:])

    global _logger
    _logger = logger

    return logger


def _configure_progress(enabled: bool, formatter: logging.Formatter,
                        file_handlers: List[logging.Handler]) -> None:
    progress = logging.getLogger(PROGRESS_LOGGER)
    progress.handlers.clear()
    progress.propagate = False
    if not enabled:
        progress.setLevel(logging.CRITICAL + 1)
        return
    progress.setLevel(logging.INFO)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    progress.addHandler(handler)
    for file_handler in file_handlers:
        progress.addHandler(file_handler)


def get_logger() -> logging.Logger:
    """
    Get the configured logger, configuring it from the config file on first use.

    Returns:
        Configured logger
    """
    global _logger
    if _logger is None:
        try:
            from .config import get_logging_config
        except ImportError:
            from config import get_logging_config
        config = get_logging_config()
        return configure_logging(
            verbose=False,
            log_file=config.get("log_file") or None,
            log_format=config.get("log_format"),
            structured=config.get("structured", False),
            log_level=config.get("log_level", "WARNING")
        )

    return _logger


def log_with_context(level: str, message: str, **context: Any) -> None:
    """
    Log a message with additional context.

    Args:
        level: Log level (debug, info, warning, error, critical)
        message: Log message
        **context: Additional context fields to include in the log
    """
    logger = get_logger()
    log_method = getattr(logger, level.lower(), logger.info)
    if context:
        suffix = " ".join(f"{key}={value}" for key, value in context.items())
        message = f"{message} [{suffix}]"
    log_method(message, extra={"context": context})


def log_progress(message: str, **context: Any) -> None:
    """Report progress of a long computation on the status channel."""
    if context:
        message = f"{message} [{' '.join(f'{key}={value}' for key, value in context.items())}]"
    logging.getLogger(PROGRESS_LOGGER).info(message, extra={"context": context})
