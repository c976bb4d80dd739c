from spin_cluster_memory.pulse.comb import (
    Harmonic,
    PulseProgram,
    bits_to_harmonics,
    centered_base_offset,
    default_sample_step,
    reference_program,
    rf_field,
)
from spin_cluster_memory.pulse.shape import export_shape, parse_shape

__all__ = [
    "Harmonic",
    "PulseProgram",
    "bits_to_harmonics",
    "centered_base_offset",
    "default_sample_step",
    "reference_program",
    "rf_field",
    "export_shape",
    "parse_shape",
]
