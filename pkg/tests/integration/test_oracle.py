import unittest

import numpy as np
import pytest

from spin_cluster_memory.codec.bits import BitArray
from spin_cluster_memory.dynamics.acquisition import acquire_fid
from spin_cluster_memory.dynamics.oracle import rk4_evolve, rk4_free_signal
from spin_cluster_memory.dynamics.propagation import evolve_pulse
from spin_cluster_memory.dynamics.state import DensityMatrix, thermal_state
from spin_cluster_memory.pulse.comb import PulseProgram, bits_to_harmonics, default_sample_step
from spin_cluster_memory.spin.system import generate_spin_system

STEP = 5e-6


def _pulse(bits="101", spacing=100.0, amplitude=3.0, duration=0.05):
    harmonics = bits_to_harmonics(BitArray.from_string(bits), None, spacing, amplitude)
    return PulseProgram(harmonics, duration, default_sample_step([h.offset for h in harmonics]))


@pytest.mark.slow
class TestAgainstRungeKutta(unittest.TestCase):
    """Eigendecomposition propagators against a plain RK4 integration of the Liouville equation."""

    def _check(self, n, bits, seed):
        sys = generate_spin_system("chain", n, 200.0, 200.0, seed)
        pulse = _pulse(bits)
        rho0 = thermal_state(sys)

        fast = evolve_pulse(rho0, sys, pulse, dt=STEP)
        slow = rk4_evolve(rho0, sys, pulse, step=STEP)
        self.assertLess(np.linalg.norm(fast.entries - slow), 1e-5)

        fid = acquire_fid(fast, sys, 64, 2e-4, 1e-3)
        reference = rk4_free_signal(DensityMatrix(slow), sys, fid.times, step=STEP)
        self.assertLess(np.max(np.abs(fid.samples - reference)), 1e-5)
        # the pulse must actually have done something
        self.assertGreater(np.max(np.abs(reference)), 1e-3)

    def test_one_spin(self):
        self._check(1, "1", seed=1)

    def test_two_spins(self):
        self._check(2, "10", seed=2)

    def test_three_spins(self):
        self._check(3, "101", seed=3)


if __name__ == "__main__":
    unittest.main()
