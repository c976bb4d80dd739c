from spin_cluster_memory.spin.system import SpinSystem, generate_spin_system
from spin_cluster_memory.spin.operators import collective_operator, single_spin_operator
from spin_cluster_memory.spin.hamiltonian import (
    count_transitions,
    dipolar_hamiltonian,
    free_hamiltonian,
    zeeman_hamiltonian,
)

__all__ = [
    "SpinSystem",
    "generate_spin_system",
    "single_spin_operator",
    "collective_operator",
    "dipolar_hamiltonian",
    "zeeman_hamiltonian",
    "free_hamiltonian",
    "count_transitions",
]
