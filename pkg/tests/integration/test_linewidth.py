import unittest

import numpy as np

from spin_cluster_memory.dynamics.acquisition import acquire_fid
from spin_cluster_memory.dynamics.propagation import evolve_pulse
from spin_cluster_memory.dynamics.state import hard_pulse, thermal_state
from spin_cluster_memory.pulse.comb import Harmonic, PulseProgram
from spin_cluster_memory.spectro.processing import measure_fwhm, spectrum
from spin_cluster_memory.spectro.readout import pick_peak
from spin_cluster_memory.spin.system import SpinSystem

TWELVE_HZ_T2STAR = 1.0 / (np.pi * 12.0)


class TestLinewidthModel(unittest.TestCase):
    def test_twelve_hz_lines(self):
        sys = SpinSystem(n=1, offsets=[100.0], couplings=[[0.0]])
        rho = hard_pulse(thermal_state(sys), sys, 90.0)
        fid = acquire_fid(rho, sys, 4096, 1e-3, 1e-3, t2star=TWELVE_HZ_T2STAR)
        spec = spectrum(fid, zero_fill=4)

        phase = float(np.angle(pick_peak(spec, 100.0)))
        width = measure_fwhm(spec, 100.0, phase=phase, half_window=50.0)
        self.assertAlmostEqual(width, 12.0, delta=0.2 * 12.0)

    def test_width_follows_t2star(self):
        sys = SpinSystem(n=1, offsets=[-150.0], couplings=[[0.0]])
        rho = hard_pulse(thermal_state(sys), sys, 90.0)
        for t2star in (0.01, 0.05):
            fid = acquire_fid(rho, sys, 8192, 5e-4, 0.0, t2star=t2star)
            spec = spectrum(fid, zero_fill=2)
            phase = float(np.angle(pick_peak(spec, -150.0)))
            with self.subTest(t2star=t2star):
                expected = 1.0 / (np.pi * t2star)
                self.assertAlmostEqual(measure_fwhm(spec, -150.0, phase, 50.0), expected, delta=0.2 * expected)


class TestPeakLocking(unittest.TestCase):
    """A weak harmonic on a transition of a coupled pair answers at the harmonic's own frequency."""

    def setUp(self):
        self.sys = SpinSystem(n=2, offsets=[150.0, -200.0], couplings=[[0.0, 50.0], [50.0, 0.0]])
        self.t2star = TWELVE_HZ_T2STAR

    def _spectrum(self, rho):
        fid = acquire_fid(rho, self.sys, 4096, 5e-4, 1e-3, t2star=self.t2star)
        return spectrum(fid, zero_fill=2)

    def test_largest_response_bin_sits_on_the_harmonic(self):
        conventional = self._spectrum(hard_pulse(thermal_state(self.sys), self.sys, 90.0))
        line = float(conventional.freqs[np.argmax(np.abs(conventional.values))])

        pulse = PulseProgram((Harmonic(line, 3.0),), duration=0.05, sample_step=2e-5)
        response = self._spectrum(evolve_pulse(thermal_state(self.sys), self.sys, pulse))
        peak = float(response.freqs[np.argmax(np.abs(response.values))])
        self.assertLessEqual(abs(peak - line), response.resolution + 1e-9)


if __name__ == "__main__":
    unittest.main()
