"""
Application logger setup.
"""

import logging
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv

FORMAT = "%(asctime)s - %(levelname)s - %(message)s"
ROOT_LOGGER = "spin_cluster_memory"


def _resolve_level(level: Optional[str]) -> int:
    load_dotenv()
    name = (level or os.getenv("SPIN_MEMORY_LOG_LEVEL") or "INFO").upper()
    resolved = logging.getLevelName(name)
    return resolved if isinstance(resolved, int) else logging.INFO


def configure_logging(level: Optional[str] = None, log_dir: Optional[Path] = None) -> logging.Logger:
    """
    Attach stream and (optionally) file handlers to the package logger.

    Args:
        level (str): Level name; falls back to SPIN_MEMORY_LOG_LEVEL, then INFO.
        log_dir (Path): Directory for app.log. No file handler when None.

    Returns:
        logging.Logger: The package root logger.
    """
    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(_resolve_level(level))
    formatter = logging.Formatter(FORMAT)

    if not any(isinstance(h, logging.StreamHandler) and not isinstance(h, logging.FileHandler)
               for h in logger.handlers):
        stream = logging.StreamHandler()
        stream.setFormatter(formatter)
        logger.addHandler(stream)

    if log_dir is not None and not any(isinstance(h, logging.FileHandler) for h in logger.handlers):
        try:
            Path(log_dir).mkdir(parents=True, exist_ok=True)
            handler = logging.FileHandler(Path(log_dir) / "app.log")
            handler.setFormatter(formatter)
            logger.addHandler(handler)
        except OSError as e:
            logger.warning(f"[LOGGER] File logging disabled: {e}")

    return logger

