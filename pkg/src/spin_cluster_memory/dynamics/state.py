"""
Deviation density matrices.

Only the traceless part of the high-temperature equilibrium state evolves
observably, so the identity part is dropped throughout.
"""

from dataclasses import dataclass

import numpy as np

from spin_cluster_memory.core.exceptions import DimensionMismatchError, HermiticityError
from spin_cluster_memory.spin.operators import collective_operator, magnetic_numbers
from spin_cluster_memory.spin.system import SpinSystem

HERMITIAN_RTOL = 1e-10
LABELS = ("thermal-deviation", "evolved")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    entries: np.ndarray
    label: str = "evolved"

    def __post_init__(self):
        rho = np.array(self.entries, dtype=complex)
        if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
            raise DimensionMismatchError(f"density matrix must be square, got {rho.shape}")
        dim = rho.shape[0]
        if dim < 2 or dim & (dim - 1):
            raise DimensionMismatchError(f"density matrix dimension {dim} is not a power of two >= 2")
        if self.label not in LABELS:
            raise ValueError(f"label must be one of {LABELS}, got {self.label!r}")

        scale = max(float(np.max(np.abs(rho), initial=0.0)), 1e-300)
        if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_RTOL * scale:
            raise HermiticityError("density matrix is not Hermitian")
        if abs(np.trace(rho)) > HERMITIAN_RTOL * scale * dim:
            raise ValueError("deviation density matrix must be traceless")
        rho.setflags(write=False)
        object.__setattr__(self, "entries", rho)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.dim.bit_length() - 1

    def expectation(self, operator: np.ndarray) -> complex:
        """Tr[rho A]."""
        return complex(np.einsum("ij,ji->", self.entries, operator))

    def frobenius(self) -> float:
        return float(np.linalg.norm(self.entries))


def require_matching(rho: DensityMatrix, sys: SpinSystem) -> None:
    if rho.dim != sys.dim:
        raise DimensionMismatchError(
            f"density matrix is {rho.dim}x{rho.dim} but the system has {sys.n} spins (dim {sys.dim})"
        )


def thermal_state(sys: SpinSystem) -> DensityMatrix:
    """sum_i Iz_i / n: diagonal, traceless, per-spin normalized."""
    diag = magnetic_numbers(sys.n).sum(axis=0) / sys.n
    return DensityMatrix(np.diag(diag).astype(complex), label="thermal-deviation")


def hard_pulse(rho: DensityMatrix, sys: SpinSystem, flip_deg: float = 90.0, axis: str = "x") -> DensityMatrix:
    """
    Ideal instantaneous rotation exp(-i theta I_axis) rho exp(+i theta I_axis).

    Used for the conventional (hard 90 degree pulse) spectrum the comb
    response is compared with.
    """
    from spin_cluster_memory.dynamics.propagation import step_propagator

    require_matching(rho, sys)
    if axis not in ("x", "y"):
        raise ValueError(f"hard pulse axis must be 'x' or 'y', got {axis!r}")
    theta = np.radians(flip_deg)
    if theta == 0.0:
        return DensityMatrix(rho.entries, label="evolved")
    # exp(-i 2 pi H dt) with H = I_axis and dt = theta / (2 pi)
    u = step_propagator(collective_operator(sys.n, axis), abs(theta) / (2.0 * np.pi))
    if theta < 0:
        u = u.conj().T
    return DensityMatrix(u @ rho.entries @ u.conj().T, label="evolved")
