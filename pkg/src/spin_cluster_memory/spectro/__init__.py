from spin_cluster_memory.spectro.processing import Spectrum, apodization, measure_fwhm, spectrum
from spin_cluster_memory.spectro.readout import (
    PhaseCalibration,
    calibrate,
    envelope,
    peak_report,
    pick_peak,
    read_bits,
)

__all__ = [
    "Spectrum",
    "spectrum",
    "apodization",
    "measure_fwhm",
    "PhaseCalibration",
    "pick_peak",
    "calibrate",
    "read_bits",
    "peak_report",
    "envelope",
]
