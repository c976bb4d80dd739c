"""
Run bundles: a directory holding everything one storage experiment needs.

    manifest.json            parameters, payload bits and comb offsets
    system.json              the spin system
    pulse.json, pulse.shape  the multi-frequency pulse
    fid.csv, spectrum.csv                        payload acquisition
    reference_fid.csv, reference_spectrum.csv    all-ones reference
    conventional_spectrum.csv                    hard 90 degree pulse (optional)
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from spin_cluster_memory import __version__
from spin_cluster_memory.codec.alphabet import BITS_PER_CHAR, bits_to_text
from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.codec.numbers import bits_to_number
from spin_cluster_memory.core.exceptions import (
    CalibrationError,
    CodecError,
    FileFormatError,
    SpinMemoryError,
)
from spin_cluster_memory.dynamics.acquisition import Fid, acquire_fid, add_transient_noise
from spin_cluster_memory.dynamics.propagation import evolve_pulse, propagation_step
from spin_cluster_memory.dynamics.state import hard_pulse, thermal_state
from spin_cluster_memory.pipeline.config import RunConfig
from spin_cluster_memory.pulse.comb import Harmonic, PulseProgram, reference_program
from spin_cluster_memory.pulse.shape import export_shape
from spin_cluster_memory.spectro.processing import Spectrum, spectrum
from spin_cluster_memory.spectro.readout import (
    calibrate,
    envelope_correlation,
    peak_report,
    read_bits,
)
from spin_cluster_memory.spin.system import SpinSystem
from spin_cluster_memory.utils.io_utils import read_json, write_json, write_text_atomic

logger = logging.getLogger(__name__)

MANIFEST = "manifest.json"
SYSTEM = "system.json"
PULSE_JSON = "pulse.json"
PULSE_SHAPE = "pulse.shape"
FID = "fid.csv"
SPECTRUM = "spectrum.csv"
REFERENCE_FID = "reference_fid.csv"
REFERENCE_SPECTRUM = "reference_spectrum.csv"
CONVENTIONAL_SPECTRUM = "conventional_spectrum.csv"


# -------------------------------------------------------------
# 1) WRITE
# -------------------------------------------------------------
def write_bundle(config: RunConfig, out_dir: str | Path) -> Path:
    """Encode the payload into a pulse and write the bundle; returns the manifest path."""
    out_dir = Path(out_dir)
    bits = config.validate()
    system = config.build_system()
    pulse = config.build_pulse(bits)

    system.save(out_dir / SYSTEM)
    write_json(out_dir / PULSE_JSON, pulse.to_json())
    write_text_atomic(out_dir / PULSE_SHAPE, export_shape(pulse))

    manifest = {
        "version": __version__,
        "config": config.to_dict(),
        "bits": bits.to_string(),
        "comb": {
            "offsets_hz": [h.offset for h in pulse.harmonics],
            "spacing_hz": config.spacing_hz,
            "amplitude_hz": config.amp_hz,
        },
        "pulse": {
            "duration_s": pulse.duration,
            "sample_step_s": pulse.sample_step,
            "propagation_dt_s": config.dt_s if config.dt_s else propagation_step(system, pulse),
        },
        "files": {"system": SYSTEM, "pulse": PULSE_JSON, "shape": PULSE_SHAPE},
    }
    path = write_json(out_dir / MANIFEST, manifest)
    logger.info(f"Bundle written to {out_dir} ({len(bits)} harmonics)")
    return path


@dataclass(frozen=True)
class Bundle:
    directory: Path
    manifest: dict
    config: RunConfig
    system: SpinSystem
    pulse: PulseProgram

    @property
    def bits(self) -> BitArray:
        return BitArray.from_string(self.manifest["bits"])

    @property
    def comb(self) -> Tuple[Harmonic, ...]:
        return comb_from_manifest(self.manifest)

    def reference(self) -> PulseProgram:
        """All-ones pulse on the manifest comb (independent of the payload pulse file)."""
        return reference_program(PulseProgram(self.comb, self.pulse.duration, self.pulse.sample_step))


def comb_from_manifest(manifest: dict) -> Tuple[Harmonic, ...]:
    try:
        amp = float(manifest["comb"]["amplitude_hz"])
        return tuple(Harmonic(offset, amp) for offset in manifest["comb"]["offsets_hz"])
    except (KeyError, TypeError) as e:
        raise FileFormatError(f"manifest has no usable comb section: {e}") from e


def load_bundle(bundle_dir: str | Path) -> Bundle:
    bundle_dir = Path(bundle_dir)
    manifest = read_json(bundle_dir / MANIFEST)
    if "config" not in manifest or "bits" not in manifest:
        raise FileFormatError(f"{bundle_dir / MANIFEST} is not a run manifest")
    config = RunConfig.from_dict(manifest["config"])
    return Bundle(
        directory=bundle_dir,
        manifest=manifest,
        config=config,
        system=SpinSystem.load(bundle_dir / SYSTEM, max_spins=config.max_spins),
        pulse=PulseProgram.from_json(read_json(bundle_dir / PULSE_JSON)),
    )


# -------------------------------------------------------------
# 2) SIMULATE
# -------------------------------------------------------------
def clean_fid(bundle: Bundle, pulse: PulseProgram) -> Fid:
    """Noiseless (but damped) FID after ``pulse`` on the thermal state."""
    cfg = bundle.config
    try:
        rho = evolve_pulse(thermal_state(bundle.system), bundle.system, pulse, dt=cfg.dt_s)
    except MemoryError as e:
        raise SpinMemoryError(
            f"propagating {bundle.system.n} spins ran out of memory; reduce --spins or raise --dt-s"
        ) from e
    return acquire_fid(
        rho, bundle.system, cfg.points, cfg.dwell_s, cfg.delay_s, t2star=cfg.t2star_s,
    )


def with_noise(fid: Fid, sigma: float, transients: int, seed: int) -> Fid:
    samples = add_transient_noise(fid.samples, sigma, transients, np.random.default_rng(seed))
    return Fid(samples=samples, dwell=fid.dwell, acq_delay=fid.acq_delay, transients=transients)


def process_fid(cfg: RunConfig, fid: Fid) -> Spectrum:
    """
    Spectrum with the run's readout processing.

    A damped FID (``t2star_s`` set) is read through a Hann window
    ``hann_t2star`` damping times long, which holds nearly all of its
    signal and leaves peaks without slowly decaying wings.
    """
    hann_s = None
    if cfg.t2star_s and cfg.hann_t2star:
        hann_s = cfg.hann_t2star * cfg.t2star_s
    return spectrum(fid, zero_fill=cfg.zero_fill, apodize_hz=cfg.apodize_hz, hann_s=hann_s)


def simulate_bundle(bundle_dir: str | Path, conventional: bool = False) -> Dict[str, Path]:
    """
    thermal_state -> evolve_pulse -> acquire_fid -> spectrum for the payload
    pulse and for the all-ones reference; deterministic given the seed.
    """
    bundle = load_bundle(bundle_dir)
    cfg = bundle.config
    out = Path(bundle_dir)
    logger.info(f"Simulating {bundle.system.n} spins, {len(bundle.pulse.harmonics)} harmonics")

    payload_fid = with_noise(clean_fid(bundle, bundle.pulse), cfg.noise, cfg.transients, cfg.seed)
    reference_fid = with_noise(clean_fid(bundle, bundle.reference()), cfg.noise, cfg.transients, cfg.seed + 1)
    payload_spec = process_fid(cfg, payload_fid)
    reference_spec = process_fid(cfg, reference_fid)

    paths = {
        "fid": payload_fid.save(out / FID),
        "spectrum": payload_spec.save(out / SPECTRUM),
        "reference_fid": reference_fid.save(out / REFERENCE_FID),
        "reference_spectrum": reference_spec.save(out / REFERENCE_SPECTRUM),
    }

    if conventional:
        rho = hard_pulse(thermal_state(bundle.system), bundle.system, 90.0)
        conv_fid = acquire_fid(
            rho, bundle.system, cfg.points, cfg.dwell_s, cfg.delay_s, t2star=cfg.t2star_s,
            noise_sigma=cfg.noise, transients=cfg.transients, seed=cfg.seed + 2,
        )
        conv_spec = process_fid(cfg, conv_fid)
        paths["conventional_spectrum"] = conv_spec.save(out / CONVENTIONAL_SPECTRUM)
        if len(bundle.comb) > 1:
            corr = envelope_correlation(reference_spec, conv_spec, bundle.comb)
            logger.info(f"Comb envelope vs conventional spectrum correlation: {corr:.3f}")
    return paths


# -------------------------------------------------------------
# 3) READ
# -------------------------------------------------------------
@dataclass(frozen=True)
class ReadResult:
    bits: BitArray
    expected: Optional[BitArray]
    report: pd.DataFrame
    text: Optional[str]
    number: int

    @property
    def matches(self) -> bool:
        return self.expected is not None and self.bits == self.expected

    @property
    def errors(self) -> List[int]:
        if self.expected is None:
            return []
        return [k for k, (a, b) in enumerate(zip(self.bits, self.expected)) if a != b]


def decode_text(bits: BitArray) -> Optional[str]:
    if len(bits) % BITS_PER_CHAR:
        return None
    try:
        return bits_to_text(bits)
    except CodecError:
        return None


def read_spectra(
    spec: Spectrum,
    reference: Spectrum,
    manifest: dict,
    threshold: Optional[float] = None,
) -> ReadResult:
    """Calibrate on ``reference`` and decode ``spec`` against the manifest comb."""
    cfg = RunConfig.from_dict(manifest.get("config", {}))
    comb = comb_from_manifest(manifest)
    cal = calibrate(reference, comb, weak_factor=cfg.weak_reference_factor)
    bits = read_bits(spec, comb, cal)
    report = peak_report(spec, comb, cal, cfg.margin_threshold if threshold is None else threshold)
    expected = BitArray.from_string(manifest["bits"]) if manifest.get("bits") else None
    return ReadResult(
        bits=bits,
        expected=expected,
        report=report,
        text=decode_text(bits),
        number=bits_to_number(bits),
    )


def read_files(
    spectrum_path: str | Path,
    reference_path: str | Path,
    manifest_path: str | Path,
    threshold: Optional[float] = None,
) -> ReadResult:
    return read_spectra(
        Spectrum.load(spectrum_path),
        Spectrum.load(reference_path),
        read_json(manifest_path),
        threshold=threshold,
    )


# -------------------------------------------------------------
# 4) NOISE TRIALS
# -------------------------------------------------------------
def noise_trials(
    bundle_dir: str | Path,
    sigma_rel: float,
    seeds: Iterable[int],
    transients: Optional[int] = None,
) -> pd.DataFrame:
    """
    Re-draw acquisition noise for each seed on top of one noiseless run.

    The noise level is set in the time domain: sigma = sigma_rel *
    max|reference FID| per sample and per transient, before averaging over
    ``transients``. It is not a fraction of the spectral peak height, which
    sums hundreds of samples. Returns one row per seed with the number of bit
    errors; a calibration failure counts as a failed seed.
    """
    bundle = load_bundle(bundle_dir)
    payload = clean_fid(bundle, bundle.pulse)
    reference = clean_fid(bundle, bundle.reference())
    return _trials(bundle, payload, reference, sigma_rel, seeds, transients)


def _trials(
    bundle: Bundle,
    payload: Fid,
    reference: Fid,
    sigma_rel: float,
    seeds: Iterable[int],
    transients: Optional[int],
) -> pd.DataFrame:
    cfg = bundle.config
    transients = cfg.transients if transients is None else transients
    sigma = sigma_rel * float(np.max(np.abs(reference.samples)))
    expected = bundle.bits
    logger.info(f"Noise trials: sigma={sigma:.4g} ({sigma_rel:g} of reference), {transients} transients")

    rows = []
    for seed in seeds:
        spec = process_fid(cfg, with_noise(payload, sigma, transients, 2 * seed))
        ref = process_fid(cfg, with_noise(reference, sigma, transients, 2 * seed + 1))
        try:
            cal = calibrate(ref, bundle.comb, weak_factor=cfg.weak_reference_factor)
            bits = read_bits(spec, bundle.comb, cal)
            errors = sum(a != b for a, b in zip(bits, expected))
        except CalibrationError:
            errors = len(expected)
        rows.append({"seed": seed, "bit_errors": errors, "recovered": errors == 0})
    return pd.DataFrame(rows, columns=["seed", "bit_errors", "recovered"])


def recovery_fraction(trials: pd.DataFrame) -> float:
    """Fraction of seeds whose payload came back without a single bit error."""
    if trials.empty:
        return float("nan")
    return float(trials["recovered"].mean())


def noise_sweep(
    bundle_dir: str | Path,
    sigma_rels: Iterable[float],
    seeds: Iterable[int],
    transients: Optional[int] = None,
) -> pd.DataFrame:
    """Recovery fraction and mean bit errors for every relative noise level."""
    seeds = list(seeds)
    bundle = load_bundle(bundle_dir)
    payload = clean_fid(bundle, bundle.pulse)
    reference = clean_fid(bundle, bundle.reference())
    rows = []
    for sigma_rel in sigma_rels:
        trials = _trials(bundle, payload, reference, sigma_rel, seeds, transients)
        rows.append({
            "sigma_rel": float(sigma_rel),
            "recovery_fraction": recovery_fraction(trials),
            "mean_bit_errors": float(trials["bit_errors"].mean()) if len(trials) else float("nan"),
        })
    return pd.DataFrame(rows, columns=["sigma_rel", "recovery_fraction", "mean_bit_errors"])
