"""
Utility functions for file input/output operations.
Every write goes to a temporary sibling first and is renamed into place,
so readers never observe a half-written artifact.
"""

import json
import logging
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Optional

import pandas as pd

from spin_cluster_memory.core.exceptions import FileFormatError

logger = logging.getLogger(__name__)

CSV_FLOAT_FORMAT = "%.12g"


def write_text_atomic(path: str | Path, content: str) -> Path:
    """
    Write text to a file via write-temp-then-rename.

    Args:
        path (str | Path): Destination path.
        content (str): Text to write; written verbatim with '\\n' line ends.

    Returns:
        Path: The destination path.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    logger.debug(f"[IO] wrote {path}")
    return path


def read_text(path: str | Path) -> str:
    """
    Read text from a file.

    Raises:
        FileFormatError: when the file does not exist.
    """
    path = Path(path)
    if not path.exists():
        raise FileFormatError(f"File not found: {path}")
    return path.read_text(encoding="utf-8")


def write_csv(df: pd.DataFrame, path: str | Path, float_format: str = CSV_FLOAT_FORMAT) -> Path:
    """
    Write a DataFrame to CSV atomically.

    Args:
        df (DataFrame): The data to write.
        path (str | Path): Destination path.
        float_format (str): printf-style float format; 12 significant digits by default.
    """
    text = df.to_csv(index=False, float_format=float_format, lineterminator="\n")
    out = write_text_atomic(path, text)
    logger.info(f"[IO] CSV saved: {out} ({len(df)} rows)")
    return out


def read_csv(path: str | Path, required_columns: Optional[Iterable[str]] = None) -> pd.DataFrame:
    """
    Read a CSV file and check its header.

    Args:
        path (str | Path): File path to read.
        required_columns (Iterable[str]): Columns that must be present.

    Returns:
        DataFrame: Loaded pandas DataFrame with at least one row.

    Raises:
        FileFormatError: missing file, unparsable content, missing columns or no rows.
    """
    path = Path(path)
    if not path.exists():
        raise FileFormatError(f"File not found: {path}")
    try:
        df = pd.read_csv(path)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise FileFormatError(f"Malformed CSV {path}: {e}") from e

    if required_columns is not None:
        missing = [c for c in required_columns if c not in df.columns]
        if missing:
            raise FileFormatError(f"{path} is missing required columns: {missing}")
    if df.empty:
        raise FileFormatError(f"{path} has no data rows")
    return df


def write_json(path: str | Path, payload: Any) -> Path:
    """Write JSON with sorted keys and a trailing newline."""
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    return write_text_atomic(path, text)


def read_json(path: str | Path) -> Any:
    """Read a JSON document, wrapping decode errors in FileFormatError."""
    text = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"Malformed JSON {path}: {e}") from e
