"""
Phase-sensitive peak readout.

A positive peak (after reference phasing) is read as 1 and a negative
peak as 0. Phases come from a reference spectrum recorded with every
harmonic at positive amplitude on the same system and pulse settings.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Optional, Sequence

import numpy as np
import pandas as pd

from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.core.exceptions import CalibrationError, SpectrumError
from spin_cluster_memory.pulse.comb import Harmonic
from spin_cluster_memory.spectro.processing import Spectrum

logger = logging.getLogger(__name__)

# pick-window half width as a fraction of the comb spacing
WINDOW_FRACTION = 0.25
# half window used when a comb has a single harmonic
SINGLE_PEAK_HALF_WINDOW = 50.0
MIN_BINS_PER_SPACING = 3
WEAK_REFERENCE_FACTOR = 10.0
MARGIN_THRESHOLD = 0.2


def _key(offset: float) -> float:
    return round(float(offset), 6)


def comb_spacing(comb: Sequence[Harmonic]) -> Optional[float]:
    """Smallest distance between neighbouring comb offsets, None for one harmonic."""
    offsets = np.sort([h.offset for h in comb])
    if offsets.size < 2:
        return None
    return float(np.min(np.diff(offsets)))


def half_window_for(comb: Sequence[Harmonic], spec: Optional[Spectrum] = None) -> float:
    spacing = comb_spacing(comb)
    if spacing is None:
        return SINGLE_PEAK_HALF_WINDOW
    if spec is not None and spec.resolution > 0 and spacing < MIN_BINS_PER_SPACING * spec.resolution:
        raise SpectrumError(
            f"comb spacing {spacing:g} Hz is under {MIN_BINS_PER_SPACING} bins of "
            f"{spec.resolution:g} Hz; acquire longer or zero-fill"
        )
    return WINDOW_FRACTION * spacing


def pick_peak(spec: Spectrum, f: float, half_window: float = SINGLE_PEAK_HALF_WINDOW) -> complex:
    """Complex value at the largest-magnitude bin within +-half_window of ``f``."""
    if f < spec.freqs[0] or f > spec.freqs[-1]:
        raise SpectrumError(
            f"{f} Hz is outside the spectral window [{spec.freqs[0]:g}, {spec.freqs[-1]:g}] Hz"
        )
    window = np.flatnonzero(np.abs(spec.freqs - f) <= half_window)
    if window.size == 0:
        window = np.array([int(np.argmin(np.abs(spec.freqs - f)))])
    best = window[np.argmax(np.abs(spec.values[window]))]
    return complex(spec.values[best])


@dataclass(frozen=True)
class PhaseCalibration:
    """Reference phase and magnitude per comb offset."""

    phases: Dict[float, float]
    magnitudes: Dict[float, float] = field(default_factory=dict)

    def phase(self, offset: float) -> float:
        try:
            return self.phases[_key(offset)]
        except KeyError:
            raise CalibrationError(f"no calibration entry for {offset} Hz", offsets=[offset]) from None

    def magnitude(self, offset: float) -> float:
        return self.magnitudes.get(_key(offset), float("nan"))

    def to_json(self) -> dict:
        return {
            "offsets_hz": sorted(self.phases),
            "phases_rad": [self.phases[k] for k in sorted(self.phases)],
            "magnitudes": [self.magnitudes.get(k) for k in sorted(self.phases)],
        }


def off_comb_median(spec: Spectrum, comb: Sequence[Harmonic], half_window: float) -> float:
    """Median magnitude of all bins outside every pick window."""
    mask = np.ones(spec.freqs.size, dtype=bool)
    for h in comb:
        mask &= np.abs(spec.freqs - h.offset) > half_window
    if not mask.any():
        return 0.0
    return float(np.median(np.abs(spec.values[mask])))


def calibrate(
    reference_spec: Spectrum,
    comb: Sequence[Harmonic],
    weak_factor: float = WEAK_REFERENCE_FACTOR,
) -> PhaseCalibration:
    """
    Store arg(pick_peak(reference, offset_k)) for every harmonic.

    Raises CalibrationError naming every offset whose reference peak is
    below ``weak_factor`` times the median off-comb magnitude.
    """
    half_window = half_window_for(comb, reference_spec)
    floor = weak_factor * off_comb_median(reference_spec, comb, half_window)

    phases, magnitudes, weak = {}, {}, []
    for h in comb:
        peak = pick_peak(reference_spec, h.offset, half_window)
        if abs(peak) == 0.0 or abs(peak) < floor:
            weak.append(h.offset)
        phases[_key(h.offset)] = float(np.angle(peak))
        magnitudes[_key(h.offset)] = float(abs(peak))

    if weak:
        raise CalibrationError(
            f"{len(weak)} reference peak(s) below {weak_factor:g}x the off-comb median "
            f"({floor / weak_factor:.3g}): {weak}",
            offsets=weak,
        )
    logger.debug(f"calibrated {len(phases)} comb offsets")
    return PhaseCalibration(phases=phases, magnitudes=magnitudes)


def _projections(spec: Spectrum, comb: Sequence[Harmonic], cal: PhaseCalibration) -> np.ndarray:
    half_window = half_window_for(comb, spec)
    return np.array([
        pick_peak(spec, h.offset, half_window) * np.exp(-1j * cal.phase(h.offset))
        for h in comb
    ])


def read_bits(spec: Spectrum, comb: Sequence[Harmonic], cal: PhaseCalibration) -> BitArray:
    """bit k = 1 if Re[pick_peak(spec, offset_k) * exp(-i cal_k)] > 0 else 0."""
    projected = _projections(spec, comb, cal)
    return BitArray(tuple(int(v.real > 0) for v in projected))


def peak_report(
    spec: Spectrum,
    comb: Sequence[Harmonic],
    cal: PhaseCalibration,
    threshold: float = MARGIN_THRESHOLD,
) -> pd.DataFrame:
    """
    Per-peak table: offset, magnitude, phase, bit, margin, flagged.

    margin is |Re[peak * exp(-i cal)]| relative to the reference magnitude;
    peaks under ``threshold`` are flagged as unreliable.
    """
    half_window = half_window_for(comb, spec)
    rows = []
    for h in comb:
        peak = pick_peak(spec, h.offset, half_window)
        projected = (peak * np.exp(-1j * cal.phase(h.offset))).real
        ref = cal.magnitude(h.offset)
        margin = abs(projected) / ref if ref and np.isfinite(ref) else float("nan")
        flagged = not (margin >= threshold)
        if flagged:
            logger.warning(f"peak at {h.offset:g} Hz has margin {margin:.3f} (< {threshold})")
        rows.append({
            "offset_hz": h.offset,
            "magnitude": abs(peak),
            "phase_rad": float(np.angle(peak)),
            "bit": int(projected > 0),
            "margin": margin,
            "flagged": flagged,
        })
    return pd.DataFrame(rows, columns=["offset_hz", "magnitude", "phase_rad", "bit", "margin", "flagged"])


def envelope(spec: Spectrum, comb: Sequence[Harmonic]) -> np.ndarray:
    """Peak magnitude at every comb offset."""
    half_window = half_window_for(comb, spec)
    return np.array([abs(pick_peak(spec, h.offset, half_window)) for h in comb])


def envelope_correlation(spec: Spectrum, conventional: Spectrum, comb: Sequence[Harmonic]) -> float:
    """
    Pearson correlation between the comb peak envelope and the conventional
    spectrum magnitude at the same offsets. Reported only.
    """
    if len(comb) < 2:
        return float("nan")
    peaks = envelope(spec, comb)
    conv = np.interp([h.offset for h in comb], conventional.freqs, np.abs(conventional.values))
    if np.std(peaks) == 0 or np.std(conv) == 0:
        return float("nan")
    return float(np.corrcoef(peaks, conv)[0, 1])
