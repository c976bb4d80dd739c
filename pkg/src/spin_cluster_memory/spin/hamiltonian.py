"""
Hamiltonians of the cluster in Hz (angular frequency = 2*pi * entries).

The dipolar term uses the secular homonuclear form

    H_dd = sum_{i<j} d_ij (2 Iz_i Iz_j - Ix_i Ix_j - Iy_i Iy_j)

which commutes with the total Iz.
"""

import logging

import numpy as np
from scipy.special import comb

from spin_cluster_memory.spin.operators import magnetic_numbers, spin_bits
from spin_cluster_memory.spin.system import SpinSystem, check_couplings

logger = logging.getLogger(__name__)


def dipolar_hamiltonian(sys: SpinSystem) -> np.ndarray:
    """Secular dipolar Hamiltonian of ``sys`` as a dense complex matrix, Hz."""
    check_couplings(sys.couplings)
    n, dim = sys.n, sys.dim
    m = magnetic_numbers(n)
    bits = spin_bits(n)
    states = np.arange(dim)

    h = np.zeros((dim, dim), dtype=complex)
    diag = np.zeros(dim)
    for i in range(n):
        for j in range(i + 1, n):
            d = sys.couplings[i, j]
            if d == 0.0:
                continue
            diag += 2.0 * d * m[i] * m[j]
            # flip-flop: -(Ix Ix + Iy Iy) = -(I+ I- + I- I+)/2
            anti = bits[i] != bits[j]
            mask = (1 << (n - 1 - i)) | (1 << (n - 1 - j))
            h[states[anti] ^ mask, states[anti]] += -0.5 * d
    h[states, states] += diag
    return h


def zeeman_hamiltonian(sys: SpinSystem) -> np.ndarray:
    """Diagonal offset term sum_i nu_i Iz_i, Hz."""
    m = magnetic_numbers(sys.n)
    return np.diag(sys.offsets @ m).astype(complex)


def free_hamiltonian(sys: SpinSystem) -> np.ndarray:
    """H_dd + H_cs, the time-independent part of every propagation."""
    return dipolar_hamiltonian(sys) + zeeman_hamiltonian(sys)


def is_hermitian(h: np.ndarray, rtol: float = 1e-12) -> bool:
    """||H - H^dagger||_inf <= rtol * ||H||_inf (zero matrices pass)."""
    scale = float(np.max(np.abs(h), initial=0.0))
    return float(np.max(np.abs(h - h.conj().T), initial=0.0)) <= rtol * max(scale, 1e-300)


def count_transitions(n: int) -> int:
    """Maximum number of single-quantum transitions, C(2n, n+1), exact."""
    n = int(n)
    if n < 1:
        raise ValueError(f"spin count must be >= 1, got {n}")
    return int(comb(2 * n, n + 1, exact=True))
