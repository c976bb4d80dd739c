"""Run configuration, run bundles and the spin-memory command line."""

from spin_cluster_memory.pipeline.bundle import (
    ReadResult,
    load_bundle,
    noise_sweep,
    noise_trials,
    process_fid,
    read_files,
    read_spectra,
    recovery_fraction,
    simulate_bundle,
    write_bundle,
)
from spin_cluster_memory.pipeline.config import RunConfig

__all__ = [
    "ReadResult",
    "RunConfig",
    "load_bundle",
    "noise_sweep",
    "noise_trials",
    "process_fid",
    "read_files",
    "read_spectra",
    "recovery_fraction",
    "simulate_bundle",
    "write_bundle",
]
