"""
Independent reference integrators for validating the propagators.

Classical fourth-order Runge-Kutta on the Liouville-von Neumann equation

    d rho / dt = -i 2 pi [H(t), rho]

with the RF field evaluated at the exact stage times (no midpoint
sampling, no eigendecomposition). Slow, meant for n <= 3.
"""

import math

import numpy as np

from spin_cluster_memory.dynamics.state import DensityMatrix, require_matching
from spin_cluster_memory.pulse.comb import PulseProgram, rf_field
from spin_cluster_memory.spin.hamiltonian import free_hamiltonian
from spin_cluster_memory.spin.operators import collective_operator
from spin_cluster_memory.spin.system import SpinSystem
from spin_cluster_memory.utils.validation import require_positive


def _rhs(h: np.ndarray, rho: np.ndarray) -> np.ndarray:
    return -2j * np.pi * (h @ rho - rho @ h)


def _rk4_step(hamiltonian_at, rho: np.ndarray, t: float, h_step: float) -> np.ndarray:
    h_start = hamiltonian_at(t)
    h_mid = hamiltonian_at(t + 0.5 * h_step)
    h_end = hamiltonian_at(t + h_step)
    k1 = _rhs(h_start, rho)
    k2 = _rhs(h_mid, rho + 0.5 * h_step * k1)
    k3 = _rhs(h_mid, rho + 0.5 * h_step * k2)
    k4 = _rhs(h_end, rho + h_step * k3)
    return rho + (h_step / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def rk4_evolve(rho0: DensityMatrix, sys: SpinSystem, pulse: PulseProgram, step: float) -> np.ndarray:
    """rho(T) after ``pulse`` integrated with RK4; returns the raw matrix."""
    require_matching(rho0, sys)
    step = require_positive("step", step)
    h0 = free_hamiltonian(sys)
    ix = collective_operator(sys.n, "x")
    iy = collective_operator(sys.n, "y")

    def hamiltonian_at(t: float) -> np.ndarray:
        f = rf_field(pulse, min(t, pulse.duration))
        return h0 + f.real * ix + f.imag * iy

    n_steps = max(1, int(math.ceil(pulse.duration / step - 1e-9)))
    h_step = pulse.duration / n_steps
    rho = rho0.entries.copy()
    for k in range(n_steps):
        rho = _rk4_step(hamiltonian_at, rho, k * h_step, h_step)
    return rho


def rk4_free_signal(rho: DensityMatrix, sys: SpinSystem, times: np.ndarray, step: float) -> np.ndarray:
    """Tr[rho(t) I+] at ascending ``times`` (>= 0) under free evolution, by RK4."""
    require_matching(rho, sys)
    step = require_positive("step", step)
    times = np.asarray(times, dtype=float)
    if times.size and (times[0] < 0 or np.any(np.diff(times) < 0)):
        raise ValueError("times must be ascending and non-negative")
    h0 = free_hamiltonian(sys)
    plus = collective_operator(sys.n, "+")

    current = rho.entries.copy()
    t_now = 0.0
    out = np.empty(times.size, dtype=complex)
    for k, target in enumerate(times):
        span = target - t_now
        if span > 0:
            n_steps = max(1, int(math.ceil(span / step - 1e-9)))
            h_step = span / n_steps
            for _ in range(n_steps):
                current = _rk4_step(lambda _t: h0, current, 0.0, h_step)
        t_now = target
        out[k] = np.einsum("ij,ji->", current, plus)
    return out
