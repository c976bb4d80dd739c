"""
Multi-frequency excitation: a sum of circularly polarized harmonics whose
amplitude signs carry the stored bits.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.core.exceptions import PulseError
from spin_cluster_memory.utils.validation import require_positive

logger = logging.getLogger(__name__)

# fraction of the fastest harmonic period a sample step may cover
SAMPLES_PER_PERIOD = 10


@dataclass(frozen=True)
class Harmonic:
    offset: float
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.offset):
            raise PulseError(f"harmonic offset must be finite, got {self.offset}")
        if not math.isfinite(self.amplitude) or self.amplitude == 0.0:
            raise PulseError(f"harmonic amplitude must be finite and non-zero, got {self.amplitude}")
        if not math.isfinite(self.phase):
            raise PulseError(f"harmonic phase must be finite, got {self.phase}")
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "amplitude", float(self.amplitude))
        object.__setattr__(self, "phase", float(self.phase))

    def to_json(self) -> dict:
        return {"offset_hz": self.offset, "amplitude_hz": self.amplitude, "phase_rad": self.phase}

    @classmethod
    def from_json(cls, payload: dict) -> "Harmonic":
        return cls(
            offset=payload["offset_hz"],
            amplitude=payload["amplitude_hz"],
            phase=payload.get("phase_rad", 0.0),
        )


@dataclass(frozen=True)
class PulseProgram:
    """Ordered harmonics played together for ``duration`` seconds."""

    harmonics: Tuple[Harmonic, ...]
    duration: float
    sample_step: float
    _offsets: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        harmonics = tuple(self.harmonics)
        object.__setattr__(self, "harmonics", harmonics)
        try:
            require_positive("duration", self.duration)
            require_positive("sample_step", self.sample_step)
        except ValueError as e:
            raise PulseError(str(e)) from e

        offsets = np.array([h.offset for h in harmonics], dtype=float)
        if len(np.unique(offsets)) != len(offsets):
            raise PulseError("harmonic offsets must be pairwise distinct")
        max_offset = float(np.max(np.abs(offsets), initial=0.0))
        if max_offset > 0 and self.sample_step > 1.0 / (SAMPLES_PER_PERIOD * max_offset) * (1 + 1e-12):
            raise PulseError(
                f"sample_step {self.sample_step:g} s undersamples the {max_offset:g} Hz harmonic; "
                f"need <= {1.0 / (SAMPLES_PER_PERIOD * max_offset):g} s"
            )
        offsets.setflags(write=False)
        object.__setattr__(self, "_offsets", offsets)

    @property
    def offsets(self) -> np.ndarray:
        return self._offsets

    @property
    def n_samples(self) -> int:
        """Number of sample_step intervals covering the duration (at least 1)."""
        return max(1, int(math.ceil(self.duration / self.sample_step - 1e-9)))

    @property
    def effective_step(self) -> float:
        return self.duration / self.n_samples

    def midpoints(self) -> np.ndarray:
        """Centres of the n_samples equal intervals of [0, duration]."""
        return (np.arange(self.n_samples) + 0.5) * self.effective_step

    def scaled(self, factor: float) -> "PulseProgram":
        return PulseProgram(
            harmonics=tuple(Harmonic(h.offset, h.amplitude * factor, h.phase) for h in self.harmonics),
            duration=self.duration,
            sample_step=self.sample_step,
        )

    def to_json(self) -> dict:
        return {
            "duration_s": self.duration,
            "sample_step_s": self.sample_step,
            "harmonics": [h.to_json() for h in self.harmonics],
        }

    @classmethod
    def from_json(cls, payload: dict) -> "PulseProgram":
        return cls(
            harmonics=tuple(Harmonic.from_json(h) for h in payload.get("harmonics", [])),
            duration=payload["duration_s"],
            sample_step=payload["sample_step_s"],
        )


def centered_base_offset(count: int, spacing: float) -> float:
    """Offset of harmonic 0 that centres a comb of ``count`` on the carrier."""
    return -0.5 * (count - 1) * spacing


def default_sample_step(offsets: Sequence[float], preferred: float = 2.0e-5) -> float:
    """``preferred`` unless the fastest harmonic needs a finer step (20 points per period)."""
    max_offset = float(np.max(np.abs(np.asarray(offsets, dtype=float)), initial=0.0))
    if max_offset == 0.0:
        return float(preferred)
    return min(float(preferred), 1.0 / (2 * SAMPLES_PER_PERIOD * max_offset))


def bits_to_harmonics(
    bits: BitArray,
    base_offset: Optional[float],
    spacing: float,
    amplitude: float,
) -> Tuple[Harmonic, ...]:
    """
    One harmonic per bit: offset base + k*spacing, amplitude +amp for 1 and
    -amp for 0, phase 0. ``base_offset=None`` centres the comb.
    """
    if not isinstance(bits, BitArray):
        bits = BitArray(tuple(bits))
    if spacing <= 0:
        raise PulseError(f"spacing must be > 0, got {spacing}")
    if amplitude <= 0:
        raise PulseError(f"amplitude must be > 0, got {amplitude}")
    if base_offset is None:
        base_offset = centered_base_offset(len(bits), spacing)

    return tuple(
        Harmonic(
            offset=base_offset + k * spacing,
            amplitude=amplitude if bit else -amplitude,
            phase=0.0,
        )
        for k, bit in enumerate(bits)
    )


def reference_program(pulse: PulseProgram) -> PulseProgram:
    """All-ones counterpart of ``pulse``: same offsets and phases, |amplitude|."""
    return PulseProgram(
        harmonics=tuple(Harmonic(h.offset, abs(h.amplitude), h.phase) for h in pulse.harmonics),
        duration=pulse.duration,
        sample_step=pulse.sample_step,
    )


def rf_field(pulse: PulseProgram, t):
    """
    Complex RF amplitude in Hz: sum_k a_k exp(i(2 pi f_k t + phi_k)).

    The real part drives the collective Ix and the imaginary part Iy. ``t``
    may be a scalar or an array of times inside [0, duration].
    """
    times = np.asarray(t, dtype=float)
    tol = 1e-12 * pulse.duration
    if np.any(times < -tol) or np.any(times > pulse.duration + tol):
        raise PulseError(f"time outside the pulse window [0, {pulse.duration}] s")

    if not pulse.harmonics:
        values = np.zeros(times.shape, dtype=complex)
    else:
        amps = np.array([h.amplitude for h in pulse.harmonics])
        phases = np.array([h.phase for h in pulse.harmonics])
        arg = 2.0 * np.pi * np.multiply.outer(times, pulse.offsets) + phases
        values = np.exp(1j * arg) @ amps

    if np.ndim(t) == 0:
        return complex(values)
    return values
