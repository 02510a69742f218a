"""
Logging system with structured logging and log rotation.
"""

import logging
import os
from logging.handlers import RotatingFileHandler
from typing import Optional

from ..config import Config

DETAILED_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(funcName)s:%(lineno)d - %(message)s"
SIMPLE_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def _has_file_handler(logger: logging.Logger, log_file: str) -> bool:
    target = os.path.abspath(log_file)
    return any(
        isinstance(handler, RotatingFileHandler) and handler.baseFilename == target
        for handler in logger.handlers
    )


def setup_logger(
    name: str,
    log_file: Optional[str] = None,
    level: Optional[str] = None,
    max_bytes: int = 10 * 1024 * 1024,  # 10MB
    backup_count: int = 5,
) -> logging.Logger:
    """
    Set up a logger with console and (optionally) rotating file handlers.

    Args:
        name: Logger name
        log_file: Path to log file (defaults to {PARCS_LOGS_DIR}/{name}.log when that is set)
        level: Log level (defaults to config LOG_LEVEL)
        max_bytes: Maximum size of log file before rotation
        backup_count: Number of backup files to keep

    Returns:
        Configured logger
    """
    logger = logging.getLogger(name)

    # Set log level
    log_level = level or Config.LOG_LEVEL
    logger.setLevel(getattr(logging, log_level.upper(), logging.INFO))

    if log_file is None and Config.LOGS_DIR:
        log_file = os.path.join(Config.LOGS_DIR, f"{name}.log")

    if not logger.handlers:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(logging.INFO)
        console_handler.setFormatter(logging.Formatter(SIMPLE_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(console_handler)

    # File handler with rotation, added at most once per file
    if log_file is not None and not _has_file_handler(logger, log_file):
        os.makedirs(os.path.dirname(os.path.abspath(log_file)), exist_ok=True)

        file_handler = RotatingFileHandler(log_file, maxBytes=max_bytes, backupCount=backup_count)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(DETAILED_FORMAT, datefmt=DATE_FORMAT))
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """
    Get a module logger whose handlers live on its top-level package logger.

    Args:
        name: Logger name (usually __name__)

    Returns:
        Logger instance
    """
    package = name.split(".")[0]
    package_logger = logging.getLogger(package)

    # If the package logger doesn't have handlers, set it up
    if not package_logger.handlers:
        setup_logger(package)

    return logging.getLogger(name)
