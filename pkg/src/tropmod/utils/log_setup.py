"""Loguru sink configuration for the command-line entry point."""

import sys
from pathlib import Path
from typing import Optional

from loguru import logger


def configure_logging(level: str = "INFO", log_file: Optional[Path] = None) -> None:
    """
    Route log records to stderr and, optionally, a rotating file.

    stdout is reserved for artifacts, so the default stderr sink is replaced.

    Args:
        level: Minimum level for the stderr sink
        log_file: Optional path for a rotating file sink
    """
    logger.remove()
    logger.add(sys.stderr, level=level, format="<level>{level: <8}</level> | {name}:{function} - {message}")
    if log_file is not None:
        log_file.parent.mkdir(parents=True, exist_ok=True)
        logger.add(str(log_file), rotation="10 MB", level="DEBUG")
