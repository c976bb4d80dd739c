"""
Free induction decay acquisition.

The detected signal is s(t) = Tr[rho(t) I+] under free evolution, sampled
at t_k = acq_delay + k * dwell. Damping and noise are applied after the
deterministic signal has been computed once.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import pandas as pd

from spin_cluster_memory.core.exceptions import AcquisitionError
from spin_cluster_memory.dynamics.state import DensityMatrix, require_matching
from spin_cluster_memory.spin.hamiltonian import free_hamiltonian
from spin_cluster_memory.spin.operators import collective_operator
from spin_cluster_memory.spin.system import SpinSystem
from spin_cluster_memory.utils.io_utils import read_csv, write_csv

logger = logging.getLogger(__name__)

FID_COLUMNS = ["index", "time_s", "re", "im"]
# complex entries per block of the coherence sum, about 64 MiB
BLOCK_ENTRIES = 2 ** 22


@dataclass(frozen=True, eq=False)
class Fid:
    samples: np.ndarray
    dwell: float
    acq_delay: float = 0.0
    transients: int = 1

    def __post_init__(self):
        samples = np.array(self.samples, dtype=complex).reshape(-1)
        if samples.size == 0:
            raise AcquisitionError("FID must contain at least one sample")
        if not self.dwell > 0:
            raise AcquisitionError(f"dwell must be > 0, got {self.dwell}")
        if self.acq_delay < 0:
            raise AcquisitionError(f"acquisition delay must be >= 0, got {self.acq_delay}")
        if int(self.transients) < 1:
            raise AcquisitionError(f"transients must be >= 1, got {self.transients}")
        samples.setflags(write=False)
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "dwell", float(self.dwell))
        object.__setattr__(self, "acq_delay", float(self.acq_delay))
        object.__setattr__(self, "transients", int(self.transients))

    @property
    def times(self) -> np.ndarray:
        return self.acq_delay + np.arange(self.samples.size) * self.dwell

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "index": np.arange(self.samples.size),
            "time_s": self.times,
            "re": self.samples.real,
            "im": self.samples.imag,
        })

    def save(self, path: str | Path) -> Path:
        return write_csv(self.to_frame(), path)

    @classmethod
    def load(cls, path: str | Path, transients: int = 1) -> "Fid":
        df = read_csv(path, required_columns=FID_COLUMNS)
        times = df["time_s"].to_numpy(dtype=float)
        if len(times) < 2:
            raise AcquisitionError(f"{path}: need at least two samples to recover the dwell time")
        return cls(
            samples=df["re"].to_numpy(dtype=float) + 1j * df["im"].to_numpy(dtype=float),
            dwell=float(times[1] - times[0]),
            acq_delay=float(times[0]),
            transients=transients,
        )


def time_block(n_coherences: int) -> int:
    """Time samples per block so one block holds at most BLOCK_ENTRIES phase factors."""
    return max(1, BLOCK_ENTRIES // max(1, int(n_coherences)))


def free_induction_signal(rho: DensityMatrix, sys: SpinSystem, times: np.ndarray) -> np.ndarray:
    """
    Noiseless Tr[rho(t) I+] for every t in ``times`` under H_dd + H_cs.

    Works in the eigenbasis of the free Hamiltonian, where every coherence
    rho_ab simply acquires exp(-i 2 pi (E_a - E_b) t).
    """
    require_matching(rho, sys)
    times = np.asarray(times, dtype=float)
    energies, vectors = np.linalg.eigh(free_hamiltonian(sys))
    rho_eig = vectors.conj().T @ rho.entries @ vectors
    plus_eig = vectors.conj().T @ collective_operator(sys.n, "+") @ vectors

    weights = rho_eig * plus_eig.T
    scale = float(np.max(np.abs(weights), initial=0.0))
    if scale == 0.0:
        return np.zeros(times.shape, dtype=complex)
    keep = np.abs(weights) > 1e-14 * scale
    rates = (energies[:, None] - energies[None, :])[keep]
    amps = weights[keep]
    logger.debug(f"free_induction_signal: {amps.size} coherences contribute")

    signal = np.empty(times.size, dtype=complex)
    flat = times.reshape(-1)
    step = time_block(amps.size)
    for start in range(0, flat.size, step):
        block = flat[start:start + step]
        signal[start:start + block.size] = np.exp(-2j * np.pi * np.multiply.outer(block, rates)) @ amps
    return signal.reshape(times.shape)


def add_transient_noise(
    samples: np.ndarray,
    noise_sigma: float,
    transients: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """
    Average of ``transients`` noisy copies of ``samples``.

    Real and imaginary parts of each transient's noise are independent
    N(0, noise_sigma^2), so the averaged noise has std noise_sigma / sqrt(M).
    """
    samples = np.asarray(samples, dtype=complex)
    if transients < 1:
        raise AcquisitionError(f"transients must be >= 1, got {transients}")
    if noise_sigma < 0:
        raise AcquisitionError(f"noise sigma must be >= 0, got {noise_sigma}")
    if noise_sigma == 0:
        return samples.copy()
    total = np.zeros(samples.shape, dtype=complex)
    for _ in range(transients):
        total += rng.normal(0.0, noise_sigma, samples.shape) + 1j * rng.normal(0.0, noise_sigma, samples.shape)
    return samples + total / transients


def acquire_fid(
    rho: DensityMatrix,
    sys: SpinSystem,
    n_points: int,
    dwell: float,
    acq_delay: float = 0.0,
    t2star: Optional[float] = None,
    noise_sigma: float = 0.0,
    transients: int = 1,
    seed: int = 0,
) -> Fid:
    """Record an FID from ``rho``; see the module docstring for the sampling rule."""
    if n_points < 2:
        raise AcquisitionError(f"n_points must be >= 2, got {n_points}")
    if acq_delay < 0:
        raise AcquisitionError(f"acquisition delay must be >= 0, got {acq_delay}")
    if transients < 1:
        raise AcquisitionError(f"transients must be >= 1, got {transients}")
    if not dwell > 0:
        raise AcquisitionError(f"dwell must be > 0, got {dwell}")
    if t2star is not None and not t2star > 0:
        raise AcquisitionError(f"t2star must be > 0 when given, got {t2star}")

    times = acq_delay + np.arange(n_points) * dwell
    samples = free_induction_signal(rho, sys, times)
    if t2star is not None:
        samples = samples * np.exp(-times / t2star)
    samples = add_transient_noise(samples, noise_sigma, transients, np.random.default_rng(seed))
    return Fid(samples=samples, dwell=dwell, acq_delay=acq_delay, transients=transients)
