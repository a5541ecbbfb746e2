"""Logging configuration module."""

import logging
import sys
import time
from contextlib import contextmanager
from typing import Iterator, Optional

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
DATE_FORMAT = "%Y-%m-%d %H:%M:%S"


def setup_logging(
    level: str = "INFO",
    log_file: Optional[str] = None,
    name: Optional[str] = None,
) -> logging.Logger:
    """
    Configure logging for sponge-dim.

    Logs always go to stderr so reports written to stdout stay machine-readable.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR)
        log_file: Optional file path for logging
        name: Logger name (None for root logger)

    Returns:
        Configured logger
    """
    log_level = getattr(logging, level.upper(), logging.INFO)
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)

    handlers = []

    stderr_handler = logging.StreamHandler(sys.stderr)
    stderr_handler.setFormatter(formatter)
    handlers.append(stderr_handler)

    if log_file:
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(formatter)
        handlers.append(file_handler)

    logger = logging.getLogger(name) if name else logging.getLogger()
    logger.setLevel(log_level)
    logger.handlers = []
    for handler in handlers:
        logger.addHandler(handler)

    # scipy's HiGHS wrapper and numpy stay quiet unless we are debugging
    if log_level > logging.DEBUG:
        logging.getLogger("scipy").setLevel(logging.WARNING)

    return logger


@contextmanager
def log_stage(logger: logging.Logger, label: str) -> Iterator[None]:
    """Log the start and duration of a pipeline stage at DEBUG level."""
    started = time.perf_counter()
    logger.debug(f"{label}: started")
    try:
        yield
    finally:
        elapsed = time.perf_counter() - started
        logger.debug(f"{label}: finished in {elapsed:.3f}s")
