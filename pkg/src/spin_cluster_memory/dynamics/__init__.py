from spin_cluster_memory.dynamics.state import DensityMatrix, hard_pulse, thermal_state
from spin_cluster_memory.dynamics.propagation import (
    evolve_pulse,
    free_evolve,
    propagation_step,
    step_propagator,
)
from spin_cluster_memory.dynamics.acquisition import (
    Fid,
    acquire_fid,
    add_transient_noise,
    free_induction_signal,
)

__all__ = [
    "DensityMatrix",
    "thermal_state",
    "hard_pulse",
    "step_propagator",
    "propagation_step",
    "evolve_pulse",
    "free_evolve",
    "Fid",
    "acquire_fid",
    "free_induction_signal",
    "add_transient_noise",
]
