"""
Fourier processing of FIDs into ascending, carrier-centred spectra.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from spin_cluster_memory.core.exceptions import FileFormatError, SpectrumError
from spin_cluster_memory.dynamics.acquisition import Fid
from spin_cluster_memory.utils.io_utils import read_csv, write_csv

logger = logging.getLogger(__name__)

SPECTRUM_COLUMNS = ["freq_hz", "re", "im", "mag"]


@dataclass(frozen=True, eq=False)
class Spectrum:
    freqs: np.ndarray
    values: np.ndarray
    resolution: float

    def __post_init__(self):
        freqs = np.array(self.freqs, dtype=float).reshape(-1)
        values = np.array(self.values, dtype=complex).reshape(-1)
        if freqs.size == 0:
            raise SpectrumError("spectrum is empty")
        if freqs.shape != values.shape:
            raise SpectrumError(f"{freqs.size} frequencies but {values.size} values")
        if freqs.size > 1 and np.any(np.diff(freqs) <= 0):
            raise SpectrumError("frequency grid must be strictly ascending")
        freqs.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "freqs", freqs)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "resolution", float(self.resolution))

    def scaled(self, factor: complex) -> "Spectrum":
        return Spectrum(self.freqs, self.values * factor, self.resolution)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "freq_hz": self.freqs,
            "re": self.values.real,
            "im": self.values.imag,
            "mag": np.abs(self.values),
        })

    def save(self, path: str | Path) -> Path:
        return write_csv(self.to_frame(), path)

    @classmethod
    def load(cls, path: str | Path) -> "Spectrum":
        df = read_csv(path, required_columns=SPECTRUM_COLUMNS)
        freqs = df["freq_hz"].to_numpy(dtype=float)
        values = df["re"].to_numpy(dtype=float) + 1j * df["im"].to_numpy(dtype=float)
        if not np.all(np.isfinite(freqs)) or not np.all(np.isfinite(values)):
            raise FileFormatError(f"{path} contains non-numeric entries")
        resolution = float(freqs[1] - freqs[0]) if freqs.size > 1 else 0.0
        return cls(freqs=freqs, values=values, resolution=resolution)


def apodization(n_points: int, dwell: float, lor_hz: Optional[float] = None, hann_s: Optional[float] = None) -> np.ndarray:
    """
    Window over t = k * dwell: exp(-pi lor t), times a Hann window spanning
    the first ``hann_s`` seconds (zero afterwards) when ``hann_s`` is given.

    A positive ``lor_hz`` broadens lines by that many Hz. The Hann window
    starts and ends at zero with zero slope, so a peak read in magnitude
    mode has wings falling as 1 / detuning^3 instead of 1 / detuning.
    """
    window = np.ones(n_points)
    if lor_hz:
        window *= np.exp(-np.pi * lor_hz * np.arange(n_points) * dwell)
    if hann_s is not None:
        if not hann_s > 0:
            raise SpectrumError(f"hann_s must be > 0, got {hann_s}")
        span = min(n_points, int(round(hann_s / dwell)) + 1)
        if span < 3:
            raise SpectrumError(f"a {hann_s:g} s Hann window covers fewer than 3 samples at dwell {dwell:g} s")
        window[:span] *= np.hanning(span)
        window[span:] = 0.0
    return window


def spectrum(
    fid: Fid,
    zero_fill: int = 1,
    apodize_hz: Optional[float] = None,
    hann_s: Optional[float] = None,
) -> Spectrum:
    """
    DFT of the FID zero-padded to ``zero_fill`` times its length, on an
    ascending grid centred at the carrier.

    The acquisition delay is compensated by the per-bin first-order ramp
    exp(-i 2 pi f delay), which cancels the exp(+i 2 pi f delay) phase a
    line at f accumulates before the first sample under numpy's forward
    transform sign. ``apodize_hz`` and ``hann_s`` select the window of
    :func:`apodization`.
    """
    if int(zero_fill) < 1:
        raise SpectrumError(f"zero_fill must be >= 1, got {zero_fill}")
    samples = fid.samples
    if apodize_hz or hann_s is not None:
        samples = samples * apodization(samples.size, fid.dwell, apodize_hz, hann_s)

    n_fft = int(zero_fill) * samples.size
    values = np.fft.fftshift(np.fft.fft(samples, n_fft))
    freqs = np.fft.fftshift(np.fft.fftfreq(n_fft, d=fid.dwell))
    if fid.acq_delay:
        values = values * np.exp(-2j * np.pi * freqs * fid.acq_delay)
    return Spectrum(freqs=freqs, values=values, resolution=1.0 / (n_fft * fid.dwell))


def measure_fwhm(spec: Spectrum, f: float, phase: float = 0.0, half_window: Optional[float] = None) -> float:
    """
    Full width at half maximum of the phased real part of the peak nearest ``f``.

    Half-maximum crossings are linearly interpolated between bins.
    """
    real = (spec.values * np.exp(-1j * phase)).real
    if half_window is None:
        centre = int(np.argmin(np.abs(spec.freqs - f)))
    else:
        window = np.flatnonzero(np.abs(spec.freqs - f) <= half_window)
        if window.size == 0:
            raise SpectrumError(f"no bins within {half_window} Hz of {f} Hz")
        centre = int(window[np.argmax(real[window])])
    peak = real[centre]
    if peak <= 0:
        raise SpectrumError(f"no positive peak at {f} Hz after phasing")
    half = 0.5 * peak

    def crossing(direction: int) -> float:
        k = centre
        while 0 <= k + direction < real.size and real[k + direction] > half:
            k += direction
        nxt = k + direction
        if not 0 <= nxt < real.size:
            raise SpectrumError("peak runs off the spectral window before half maximum")
        frac = (real[k] - half) / (real[k] - real[nxt])
        return spec.freqs[k] + frac * (spec.freqs[nxt] - spec.freqs[k])

    return float(crossing(+1) - crossing(-1))
