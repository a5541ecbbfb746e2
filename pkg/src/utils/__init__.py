"""Utility modules."""

from .logging import setup_logging, log_stage
from .numbers import parse_rational, format_rational, format_real

__all__ = ["setup_logging", "log_stage", "parse_rational", "format_rational", "format_real"]
