"""
Spectrometer shape files.

Layout (line oriented, '\\n' terminated):

    # points: <int>
    # step_us: <float>
    # scale_hz: <float>
    amplitude_rel,phase_deg      (one row per midpoint sample)

amplitude_rel is normalized so the largest sample is 1.0; scale_hz carries
the absolute amplitude. Numbers use 9 significant digits.
"""

from typing import Tuple

import numpy as np

from spin_cluster_memory.core.exceptions import FileFormatError, PulseError
from spin_cluster_memory.pulse.comb import PulseProgram, rf_field

DIGITS = 9
HEADER_KEYS = ("points", "step_us", "scale_hz")


def _fmt(value: float) -> str:
    text = f"{value:.{DIGITS}g}"
    return "0" if text == "-0" else text


def sample_waveform(pulse: PulseProgram) -> np.ndarray:
    """Complex RF samples at the midpoint of every sample interval."""
    return rf_field(pulse, pulse.midpoints())


def export_shape(pulse: PulseProgram) -> str:
    """Render ``pulse`` as shape-file text."""
    if pulse.duration <= 0 or pulse.n_samples < 1:
        raise PulseError("cannot export a zero-duration pulse")

    samples = sample_waveform(pulse)
    magnitude = np.abs(samples)
    scale = float(np.max(magnitude, initial=0.0))
    rel = magnitude / scale if scale > 0 else np.zeros_like(magnitude)
    phase = np.where(magnitude > 0, np.degrees(np.angle(samples)) % 360.0, 0.0)

    lines = [
        f"# points: {len(samples)}",
        f"# step_us: {_fmt(pulse.effective_step * 1e6)}",
        f"# scale_hz: {_fmt(scale)}",
    ]
    for r, p in zip(rel, phase):
        p_text = _fmt(p)
        if float(p_text) >= 360.0:
            p_text = "0"
        lines.append(f"{_fmt(r)},{p_text}")
    return "\n".join(lines) + "\n"


def parse_shape(text: str) -> Tuple[np.ndarray, float, float]:
    """
    Parse shape-file text.

    Returns:
        (samples, step_s, scale_hz) where samples are complex RF values in Hz.
    """
    header = {}
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition(":")
            header[key.strip()] = value.strip()
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise FileFormatError(f"shape line {lineno}: expected 'amplitude_rel,phase_deg'")
        try:
            rows.append((float(parts[0]), float(parts[1])))
        except ValueError as e:
            raise FileFormatError(f"shape line {lineno}: {e}") from e

    missing = [k for k in HEADER_KEYS if k not in header]
    if missing:
        raise FileFormatError(f"shape header is missing {missing}")
    points = int(header["points"])
    if points != len(rows):
        raise FileFormatError(f"shape header says {points} points, found {len(rows)} rows")

    scale = float(header["scale_hz"])
    step = float(header["step_us"]) * 1e-6
    data = np.array(rows, dtype=float).reshape(-1, 2)
    samples = scale * data[:, 0] * np.exp(1j * np.radians(data[:, 1]))
    return samples, step, scale
