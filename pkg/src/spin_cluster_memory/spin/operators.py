"""
Spin-1/2 product operators on the 2^n dimensional Zeeman basis.

Basis ordering follows the Kronecker product with spin 0 leftmost; within
each spin, index 0 is |up> (m = +1/2) and index 1 is |down>.
"""

from typing import Optional

import numpy as np

from spin_cluster_memory.core.exceptions import OperatorIndexError
from spin_cluster_memory.spin.system import check_dense_limit

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}
SINGLE_AXES = ("x", "y", "z")
COLLECTIVE_AXES = ("x", "y", "z", "+", "-")


def _check_axis(axis: str, allowed) -> str:
    if axis not in allowed:
        raise ValueError(f"Unknown axis '{axis}'; expected one of {allowed}")
    return axis


def spin_bits(n: int) -> np.ndarray:
    """bits[i, s] = state of spin i (0 up, 1 down) in basis state s."""
    states = np.arange(2 ** n)
    shifts = n - 1 - np.arange(n)
    return (states[None, :] >> shifts[:, None]) & 1


def magnetic_numbers(n: int) -> np.ndarray:
    """m[i, s] = +1/2 or -1/2 for spin i in basis state s."""
    return 0.5 - spin_bits(n)


def single_spin_operator(n: int, i: int, axis: str, max_spins: Optional[int] = None) -> np.ndarray:
    """
    (1/2) * Pauli(axis) on slot i, identity elsewhere.

    Returns a dense complex (2^n, 2^n) matrix; Hermitian and traceless.
    """
    n = check_dense_limit(n, max_spins)
    _check_axis(axis, SINGLE_AXES)
    if not 0 <= int(i) < n:
        raise OperatorIndexError(f"spin index {i} out of range for {n} spins")

    left = np.eye(2 ** int(i), dtype=complex)
    right = np.eye(2 ** (n - int(i) - 1), dtype=complex)
    return np.kron(np.kron(left, 0.5 * PAULI[axis]), right)


def collective_operator(n: int, axis: str, max_spins: Optional[int] = None) -> np.ndarray:
    """
    Sum over all spins of the single-spin operator; I+ = Ix + i*Iy, I- = Ix - i*Iy.

    Built directly from bit flips rather than n Kronecker products.
    """
    n = check_dense_limit(n, max_spins)
    _check_axis(axis, COLLECTIVE_AXES)
    dim = 2 ** n
    if axis == "z":
        return np.diag(magnetic_numbers(n).sum(axis=0)).astype(complex)

    states = np.arange(dim)
    bits = spin_bits(n)
    op = np.zeros((dim, dim), dtype=complex)
    for i in range(n):
        mask = 1 << (n - 1 - i)
        flipped = states ^ mask
        down = bits[i] == 1
        # raising: |down_i> -> |up_i>, element <s^mask| I+ |s> = 1
        if axis == "+":
            op[flipped[down], states[down]] += 1.0
        elif axis == "-":
            op[flipped[~down], states[~down]] += 1.0
        elif axis == "x":
            op[flipped, states] += 0.5
        else:
            op[flipped[down], states[down]] += -0.5j
            op[flipped[~down], states[~down]] += 0.5j
    return op
