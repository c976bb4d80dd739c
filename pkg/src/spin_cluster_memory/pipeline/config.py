"""
Run configuration: YAML defaults overlaid with command-line values.
"""

import logging
from dataclasses import asdict, dataclass, fields, replace
from typing import Optional

from spin_cluster_memory.codec.alphabet import text_to_bits
from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.codec.numbers import number_to_bits
from spin_cluster_memory.core.config import load_simulation_defaults
from spin_cluster_memory.core.exceptions import PulseError, SizeMismatchError
from spin_cluster_memory.pulse.comb import (
    PulseProgram,
    bits_to_harmonics,
    centered_base_offset,
    default_sample_step,
)
from spin_cluster_memory.spin.system import SpinSystem, check_dense_limit, generate_spin_system

logger = logging.getLogger(__name__)

PAYLOAD_KINDS = ("text", "bits", "number")
# 1 / (pi * 12 Hz): Lorentzian lines 12 Hz wide
TWELVE_HZ_T2STAR = 0.026525823848649224


@dataclass(frozen=True)
class RunConfig:
    # spin system: a JSON file, or generator parameters
    system_path: Optional[str] = None
    geometry: str = "chain"
    spins: int = 6
    d_nn_hz: float = 800.0
    spread_hz: float = 1000.0
    system_seed: int = 7
    max_spins: int = 12
    # comb
    spacing_hz: float = 200.0
    amp_hz: float = 3.0
    base_offset_hz: Optional[float] = None
    harmonics: Optional[int] = None
    # pulse and propagation
    duration_s: float = 0.3
    sample_step_s: Optional[float] = 2.0e-5
    dt_s: Optional[float] = None
    # acquisition
    points: int = 8192
    dwell_s: float = 5.0e-5
    delay_s: float = 1.0e-3
    t2star_s: Optional[float] = TWELVE_HZ_T2STAR
    noise: float = 0.0
    transients: int = 512
    seed: int = 7
    # readout
    zero_fill: int = 2
    margin_threshold: float = 0.2
    weak_reference_factor: float = 10.0
    apodize_hz: Optional[float] = None
    hann_t2star: Optional[float] = 2.0
    # payload
    payload_kind: str = "bits"
    payload: str = "101101001110"
    number_width: Optional[int] = None

    @classmethod
    def from_defaults(cls, defaults: Optional[dict] = None, **overrides) -> "RunConfig":
        """Flatten configs/simulation.yaml sections into fields, then apply overrides (None = keep)."""
        d = load_simulation_defaults() if defaults is None else defaults
        system = d.get("system", {})
        comb = d.get("comb", {})
        pulse = d.get("pulse", {})
        acq = d.get("acquisition", {})
        readout = d.get("readout", {})
        values = {
            "geometry": system.get("geometry"),
            "spins": system.get("spins"),
            "d_nn_hz": system.get("d_nn_hz"),
            "spread_hz": system.get("spread_hz"),
            "system_seed": system.get("seed"),
            "max_spins": system.get("max_spins"),
            "spacing_hz": comb.get("spacing_hz"),
            "amp_hz": comb.get("amp_hz"),
            "base_offset_hz": comb.get("base_offset_hz"),
            "duration_s": pulse.get("duration_s"),
            "sample_step_s": pulse.get("sample_step_s"),
            "dt_s": d.get("propagation", {}).get("dt_s"),
            "points": acq.get("points"),
            "dwell_s": acq.get("dwell_s"),
            "delay_s": acq.get("delay_s"),
            "t2star_s": acq.get("t2star_s"),
            "noise": acq.get("noise"),
            "transients": acq.get("transients"),
            "seed": acq.get("seed"),
            "zero_fill": readout.get("zero_fill"),
            "margin_threshold": readout.get("margin_threshold"),
            "weak_reference_factor": readout.get("weak_reference_factor"),
            "apodize_hz": readout.get("apodize_hz"),
            "hann_t2star": readout.get("hann_t2star"),
        }
        nullable = {"base_offset_hz", "dt_s", "t2star_s", "apodize_hz", "hann_t2star", "sample_step_s"}
        kwargs = {k: v for k, v in values.items() if v is not None or k in nullable}
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)

    def with_overrides(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    # ---- payload ----
    def payload_bits(self) -> BitArray:
        if self.payload_kind == "text":
            return text_to_bits(self.payload)
        if self.payload_kind == "bits":
            return BitArray.from_string(self.payload)
        if self.payload_kind == "number":
            return number_to_bits(int(self.payload), self.number_width)
        raise ValueError(f"payload kind must be one of {PAYLOAD_KINDS}, got {self.payload_kind!r}")

    # ---- builders ----
    def build_system(self) -> SpinSystem:
        if self.system_path:
            return SpinSystem.load(self.system_path, max_spins=self.max_spins)
        return generate_spin_system(
            self.geometry, self.spins, self.d_nn_hz, self.spread_hz, self.system_seed,
            max_spins=self.max_spins,
        )

    def comb_offsets(self, count: int) -> list:
        base = self.base_offset_hz
        if base is None:
            base = centered_base_offset(count, self.spacing_hz)
        return [base + k * self.spacing_hz for k in range(count)]

    def build_pulse(self, bits: BitArray) -> PulseProgram:
        harmonics = bits_to_harmonics(bits, self.base_offset_hz, self.spacing_hz, self.amp_hz)
        offsets = [h.offset for h in harmonics]
        preferred = self.sample_step_s if self.sample_step_s else 2.0e-5
        return PulseProgram(
            harmonics=harmonics,
            duration=self.duration_s,
            sample_step=default_sample_step(offsets, preferred),
        )

    def validate(self) -> BitArray:
        """Check cross-field invariants; returns the payload bits."""
        if self.system_path is None:
            check_dense_limit(self.spins, self.max_spins)
        bits = self.payload_bits()
        if self.harmonics is not None and self.harmonics != len(bits):
            raise SizeMismatchError(
                f"payload has {len(bits)} bits but {self.harmonics} harmonics are configured"
            )
        nyquist = 1.0 / (2.0 * self.dwell_s)
        max_offset = max(abs(o) for o in self.comb_offsets(len(bits)))
        if not max_offset < nyquist:
            raise PulseError(
                f"comb reaches {max_offset:g} Hz but the acquisition window is +-{nyquist:g} Hz; "
                f"reduce --dwell-s or --spacing-hz"
            )
        if self.points < 2:
            raise ValueError(f"points must be >= 2, got {self.points}")
        if self.transients < 1:
            raise ValueError(f"transients must be >= 1, got {self.transients}")
        if self.t2star_s is not None and not self.t2star_s > 0:
            raise ValueError(f"t2star_s must be > 0 or null, got {self.t2star_s}")
        if self.hann_t2star is not None and not self.hann_t2star > 0:
            raise ValueError(f"hann_t2star must be > 0 or null, got {self.hann_t2star}")
        return bits

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in payload.items() if k in known})
