"""
Runtime Settings
================

Settings come from a ``.env`` file in the working directory (if present)
and the process environment, in that order of precedence reversed: values
already exported in the environment win over the file.
"""

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv
from loguru import logger

from .errors import InputFormatError

DEFAULT_GENERATION_EDGES = 9
DEFAULT_STRATA_EDGES = 20
DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Settings:
    """Resolved runtime settings."""
    max_generation_edges: int = DEFAULT_GENERATION_EDGES
    max_strata_edges: int = DEFAULT_STRATA_EDGES
    workers: int = 1
    data_dir: Path = Path("data")
    log_level: str = "INFO"
    log_file: Optional[Path] = None
    tolerance: float = DEFAULT_TOLERANCE


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InputFormatError(f"environment variable {name} must be an integer, got {raw!r}")
    if value < 0:
        raise InputFormatError(f"environment variable {name} must be non-negative, got {value}")
    return value


def load_settings(env_file: Optional[Path] = None) -> Settings:
    """
    Load settings from ``.env`` and the environment.

    Args:
        env_file: Explicit dotenv file; defaults to ``.env`` in the working directory

    Returns:
        Settings instance
    """
    load_dotenv(dotenv_path=env_file, override=False)

    override = os.getenv("TROPMOD_MAX_EDGES")
    if override:
        bound = _int_env("TROPMOD_MAX_EDGES", DEFAULT_GENERATION_EDGES)
        generation_edges, strata_edges = bound, bound
        logger.debug(f"Desk-scale bounds overridden by TROPMOD_MAX_EDGES={bound}")
    else:
        generation_edges, strata_edges = DEFAULT_GENERATION_EDGES, DEFAULT_STRATA_EDGES

    log_file = os.getenv("TROPMOD_LOG_FILE")
    tolerance_raw = os.getenv("TROPMOD_TOLERANCE")
    try:
        tolerance = float(tolerance_raw) if tolerance_raw else DEFAULT_TOLERANCE
    except ValueError:
        raise InputFormatError(f"environment variable TROPMOD_TOLERANCE must be a float, got {tolerance_raw!r}")

    return Settings(
        max_generation_edges=generation_edges,
        max_strata_edges=strata_edges,
        workers=max(1, _int_env("TROPMOD_WORKERS", 1)),
        data_dir=Path(os.getenv("TROPMOD_DATA_DIR", "data")),
        log_level=os.getenv("TROPMOD_LOG_LEVEL", "INFO").upper(),
        log_file=Path(log_file) if log_file else None,
        tolerance=tolerance,
    )
