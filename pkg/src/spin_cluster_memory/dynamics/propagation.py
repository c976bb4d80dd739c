"""
Piecewise-constant propagation of the deviation density matrix.

All Hamiltonians are in Hz; the factor 2*pi is applied here and nowhere
else. During a pulse

    H(t) = H_dd + H_cs + Re f(t) * Ix_total + Im f(t) * Iy_total

with f sampled at the midpoint of every step.
"""

import logging
import math
from typing import Optional

import numpy as np

from spin_cluster_memory.core.exceptions import HermiticityError
from spin_cluster_memory.dynamics.state import DensityMatrix, require_matching
from spin_cluster_memory.pulse.comb import PulseProgram, rf_field
from spin_cluster_memory.spin.hamiltonian import free_hamiltonian, is_hermitian
from spin_cluster_memory.spin.operators import collective_operator
from spin_cluster_memory.spin.system import SpinSystem
from spin_cluster_memory.utils.validation import require_positive

logger = logging.getLogger(__name__)

# steps per period of the fastest free precession rate
STEPS_PER_BANDWIDTH = 20
# keep each batch of stacked propagators around 64 MiB
BATCH_ENTRIES = 2 ** 22


def step_propagator(h: np.ndarray, dt: float) -> np.ndarray:
    """U = exp(-i 2 pi H dt) via Hermitian eigendecomposition."""
    dt = require_positive("dt", dt)
    h = np.asarray(h, dtype=complex)
    if not is_hermitian(h, rtol=1e-10):
        raise HermiticityError("propagator requires a Hermitian Hamiltonian")
    energies, vectors = np.linalg.eigh(h)
    return (vectors * np.exp(-2j * np.pi * energies * dt)) @ vectors.conj().T


def propagation_step(sys: SpinSystem, pulse: PulseProgram) -> float:
    """min(pulse sample step, 1 / (20 W)), W = max|nu_i| + max row-sum |d_ij|."""
    dt = pulse.effective_step
    bandwidth = sys.bandwidth()
    if bandwidth > 0:
        dt = min(dt, 1.0 / (STEPS_PER_BANDWIDTH * bandwidth))
    return dt


def free_evolve(rho: DensityMatrix, sys: SpinSystem, t: float) -> DensityMatrix:
    """Exact evolution under H_dd + H_cs for time ``t``."""
    require_matching(rho, sys)
    if t == 0:
        return rho
    u = step_propagator(free_hamiltonian(sys), t)
    return DensityMatrix(u @ rho.entries @ u.conj().T, label="evolved")


def evolve_pulse(
    rho0: DensityMatrix,
    sys: SpinSystem,
    pulse: PulseProgram,
    dt: Optional[float] = None,
) -> DensityMatrix:
    """
    rho(T) after the multi-frequency pulse.

    ``dt`` defaults to propagation_step(sys, pulse) and is shrunk so that an
    integer number of steps spans the duration.
    """
    require_matching(rho0, sys)
    h0 = free_hamiltonian(sys)

    if not pulse.harmonics:
        u = step_propagator(h0, pulse.duration)
        return DensityMatrix(u @ rho0.entries @ u.conj().T, label="evolved")

    dt = propagation_step(sys, pulse) if dt is None else require_positive("dt", dt)
    n_steps = max(1, int(math.ceil(pulse.duration / dt - 1e-9)))
    dt = pulse.duration / n_steps
    logger.debug(f"evolve_pulse: {n_steps} steps of {dt:.3e} s for {sys.n} spins")

    ix = collective_operator(sys.n, "x")
    iy = collective_operator(sys.n, "y")
    batch = max(1, min(n_steps, BATCH_ENTRIES // (sys.dim * sys.dim)))

    rho = rho0.entries.copy()
    for start in range(0, n_steps, batch):
        stop = min(start + batch, n_steps)
        mids = (np.arange(start, stop) + 0.5) * dt
        field = rf_field(pulse, mids)
        stack = (
            h0[None, :, :]
            + field.real[:, None, None] * ix[None, :, :]
            + field.imag[:, None, None] * iy[None, :, :]
        )
        energies, vectors = np.linalg.eigh(stack)
        props = (vectors * np.exp(-2j * np.pi * energies * dt)[:, None, :]) @ vectors.conj().transpose(0, 2, 1)
        for u in props:
            rho = u @ rho @ u.conj().T

    return DensityMatrix(rho, label="evolved")
