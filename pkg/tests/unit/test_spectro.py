import tempfile
import unittest
from pathlib import Path

import numpy as np

from spin_cluster_memory.core.exceptions import CalibrationError, FileFormatError, SpectrumError
from spin_cluster_memory.dynamics.acquisition import Fid
from spin_cluster_memory.pulse.comb import Harmonic
from spin_cluster_memory.spectro.processing import Spectrum, apodization, measure_fwhm, spectrum
from spin_cluster_memory.spectro.readout import (
    calibrate,
    envelope,
    envelope_correlation,
    half_window_for,
    peak_report,
    pick_peak,
    read_bits,
)

FREQS = np.linspace(-1000.0, 1000.0, 4001)


def _lorentzian(f0, amp=1.0, width=12.0):
    """Absorptive complex Lorentzian with FWHM ``width``."""
    g = width / 2.0
    return amp * g / (g - 1j * (FREQS - f0))


def _comb_spectrum(signs, phase=0.0, offsets=(-300.0, -100.0, 100.0, 300.0)):
    """Absorption-only comb, so every peak is exactly real before ``phase`` is applied."""
    values = sum(_lorentzian(f, s).real for f, s in zip(offsets, signs)) * np.exp(1j * phase)
    return Spectrum(FREQS, values, FREQS[1] - FREQS[0])


COMB = tuple(Harmonic(f, 3.0) for f in (-300.0, -100.0, 100.0, 300.0))


class TestSpectrum(unittest.TestCase):
    def test_tone_lands_on_its_bin(self):
        fid = Fid(samples=np.exp(2j * np.pi * 200.0 * np.arange(1024) * 1e-3), dwell=1e-3)
        spec = spectrum(fid)
        peak_freq = spec.freqs[np.argmax(np.abs(spec.values))]
        self.assertLessEqual(abs(peak_freq - 200.0), spec.resolution / 2)
        self.assertTrue(np.all(np.diff(spec.freqs) > 0))

    def test_zero_fid_zero_spectrum(self):
        spec = spectrum(Fid(samples=np.zeros(64), dwell=1e-3), zero_fill=2)
        self.assertEqual(spec.freqs.size, 128)
        np.testing.assert_array_equal(spec.values, np.zeros(128))

    def test_delay_compensation_restores_the_phase(self):
        dwell, f = 1e-3, 200.0
        k = np.arange(1000)
        prompt = Fid(samples=np.exp(2j * np.pi * f * k * dwell), dwell=dwell)
        delayed = Fid(samples=np.exp(2j * np.pi * f * (1e-3 + k * dwell)), dwell=dwell, acq_delay=1e-3)
        a, b = spectrum(prompt), spectrum(delayed)
        idx = int(np.argmin(np.abs(a.freqs - f)))
        self.assertAlmostEqual(a.freqs[idx], f, places=9)
        self.assertLess(abs(np.angle(b.values[idx] / a.values[idx])), 1e-6)

    def test_parseval(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            samples = rng.normal(size=256) + 1j * rng.normal(size=256)
            spec = spectrum(Fid(samples=samples, dwell=1e-3))
            lhs = np.sum(np.abs(samples) ** 2)
            rhs = np.sum(np.abs(spec.values) ** 2) / samples.size
            self.assertLess(abs(lhs - rhs) / lhs, 1e-9)

    def test_apodization_broadens(self):
        fid = Fid(samples=np.exp(-np.arange(4096) * 1e-3 / (1 / (np.pi * 5.0))), dwell=1e-3)
        narrow = measure_fwhm(spectrum(fid, zero_fill=4), 0.0)
        broad = measure_fwhm(spectrum(fid, zero_fill=4, apodize_hz=5.0), 0.0)
        self.assertAlmostEqual(broad - narrow, 5.0, delta=0.5)

    def test_hann_window_starts_at_zero_and_ends_after_its_span(self):
        window = apodization(100, 1e-3, hann_s=0.04)
        self.assertEqual(window[0], 0.0)
        self.assertAlmostEqual(window[20], 1.0, places=12)
        np.testing.assert_array_equal(window[41:], 0.0)
        np.testing.assert_allclose(window[:41], window[:41][::-1], atol=1e-15)

    def test_hann_window_cuts_the_wings_of_a_damped_line(self):
        t2star = 1.0 / (np.pi * 12.0)
        k = np.arange(8192)
        fid = Fid(samples=np.exp(-k * 5e-5 / t2star), dwell=5e-5)
        raw = spectrum(fid, zero_fill=2)
        windowed = spectrum(fid, zero_fill=2, hann_s=2 * t2star)
        far = np.abs(raw.freqs - 500.0) <= 5.0
        raw_wing = np.max(np.abs(raw.values[far])) / np.max(np.abs(raw.values))
        hann_wing = np.max(np.abs(windowed.values[far])) / np.max(np.abs(windowed.values))
        self.assertGreater(raw_wing, 5e-3)
        self.assertLess(hann_wing, 1e-2 * raw_wing)
        self.assertEqual(windowed.freqs[np.argmax(np.abs(windowed.values))], 0.0)

    def test_hann_window_needs_three_samples(self):
        for hann_s in (0.0, -1.0, 1e-3):
            with self.subTest(hann_s=hann_s):
                with self.assertRaises(SpectrumError):
                    apodization(64, 1e-3, hann_s=hann_s)

    def test_rejects_bad_zero_fill(self):
        with self.assertRaises(SpectrumError):
            spectrum(Fid(samples=np.ones(8), dwell=1e-3), zero_fill=0)

    def test_csv_round_trip(self):
        spec = _comb_spectrum([1, -1, 1, 1])
        with tempfile.TemporaryDirectory() as tmp:
            loaded = Spectrum.load(spec.save(Path(tmp) / "spectrum.csv"))
        np.testing.assert_allclose(loaded.values, spec.values, rtol=1e-10, atol=1e-12)
        self.assertAlmostEqual(loaded.resolution, spec.resolution)

    def test_empty_csv(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "empty.csv"
            path.write_text("freq_hz,re,im,mag\n")
            with self.assertRaises(FileFormatError):
                Spectrum.load(path)


class TestPeakPicking(unittest.TestCase):
    def test_sign_of_isolated_peak(self):
        positive = Spectrum(FREQS, _lorentzian(200.0, 1.0), FREQS[1] - FREQS[0])
        negative = Spectrum(FREQS, _lorentzian(200.0, -1.0), FREQS[1] - FREQS[0])
        self.assertGreater(pick_peak(positive, 200.0).real, 0)
        self.assertLess(pick_peak(negative, 200.0).real, 0)

    def test_neighbour_does_not_leak(self):
        both = Spectrum(FREQS, _lorentzian(-100.0) + _lorentzian(100.0, -1.0), FREQS[1] - FREQS[0])
        alone = Spectrum(FREQS, _lorentzian(-100.0), FREQS[1] - FREQS[0])
        a, b = pick_peak(both, -100.0, 50.0), pick_peak(alone, -100.0, 50.0)
        self.assertLess(abs(a - b) / abs(b), 0.05)

    def test_outside_window(self):
        spec = _comb_spectrum([1, 1, 1, 1])
        with self.assertRaises(SpectrumError):
            pick_peak(spec, 5000.0)

    def test_spacing_must_cover_three_bins(self):
        coarse = Spectrum(np.arange(-1000.0, 1001.0, 100.0), np.zeros(21), 100.0)
        with self.assertRaises(SpectrumError):
            half_window_for(COMB, coarse)

    def test_fwhm_of_lorentzian(self):
        spec = Spectrum(FREQS, _lorentzian(0.0, 1.0, 12.0), FREQS[1] - FREQS[0])
        self.assertAlmostEqual(measure_fwhm(spec, 0.0), 12.0, delta=0.05)


class TestCalibrationAndReadout(unittest.TestCase):
    def test_real_positive_reference_has_zero_phases(self):
        cal = calibrate(_comb_spectrum([1, 1, 1, 1]), COMB)
        for h in COMB:
            self.assertAlmostEqual(cal.phase(h.offset), 0.0, places=12)

    def test_global_phase_shifts_every_phase(self):
        cal = calibrate(_comb_spectrum([1, 1, 1, 1], phase=0.7), COMB)
        for h in COMB:
            self.assertAlmostEqual(cal.phase(h.offset), 0.7, places=12)

    def test_reference_reads_as_all_ones(self):
        ref = _comb_spectrum([1, 1, 1, 1], phase=-2.0)
        cal = calibrate(ref, COMB)
        self.assertEqual(read_bits(ref, COMB, cal).to_string(), "1111")

    def test_negated_peak_flips_only_its_bit(self):
        cal = calibrate(_comb_spectrum([1, 1, 1, 1], phase=1.1), COMB)
        for k in range(4):
            signs = [1, 1, 1, 1]
            signs[k] = -1
            bits = read_bits(_comb_spectrum(signs, phase=1.1), COMB, cal)
            expected = "".join("0" if i == k else "1" for i in range(4))
            self.assertEqual(bits.to_string(), expected)

    def test_bits_ignore_a_positive_overall_scale(self):
        ref = _comb_spectrum([1, 1, 1, 1], phase=0.4)
        data = _comb_spectrum([1, -1, -1, 1], phase=0.4)
        cal = calibrate(ref, COMB)
        for factor in (1e-9, 0.25, 7.0, 1e9):
            with self.subTest(factor=factor):
                self.assertEqual(read_bits(data.scaled(factor), COMB, cal).to_string(), "1001")
                scaled_cal = calibrate(ref.scaled(factor), COMB)
                self.assertEqual(read_bits(data.scaled(factor), COMB, scaled_cal).to_string(), "1001")

    def test_weak_reference_names_the_offset(self):
        values = _comb_spectrum([1, 1, 1, 1]).values.copy()
        values[np.abs(FREQS - 100.0) <= 50.0] = 1e-6
        weak = Spectrum(FREQS, values, FREQS[1] - FREQS[0])
        with self.assertRaises(CalibrationError) as ctx:
            calibrate(weak, COMB)
        self.assertEqual(ctx.exception.offsets, [100.0])

    def test_report_flags_a_zeroed_peak(self):
        ref = _comb_spectrum([1, 1, 1, 1])
        cal = calibrate(ref, COMB)
        values = _comb_spectrum([1, -1, 1, 1]).values.copy()
        values[np.abs(FREQS - 300.0) <= 50.0] = 0.0
        with self.assertLogs("spin_cluster_memory.spectro.readout", level="WARNING"):
            report = peak_report(Spectrum(FREQS, values, FREQS[1] - FREQS[0]), COMB, cal)
        self.assertEqual(list(report.columns), ["offset_hz", "magnitude", "phase_rad", "bit", "margin", "flagged"])
        self.assertEqual(report["flagged"].tolist(), [False, False, False, True])
        self.assertEqual(report["bit"].tolist()[:3], [1, 0, 1])
        self.assertGreater(report["margin"].iloc[0], 0.9)

    def test_envelope_follows_amplitudes(self):
        offsets = (-300.0, -100.0, 100.0, 300.0)
        values = sum(_lorentzian(f, a) for f, a in zip(offsets, (1.0, 2.0, 3.0, 4.0)))
        spec = Spectrum(FREQS, values, FREQS[1] - FREQS[0])
        env = envelope(spec, COMB)
        self.assertTrue(np.all(np.diff(env) > 0))
        self.assertGreater(envelope_correlation(spec, spec, COMB), 0.99)


if __name__ == "__main__":
    unittest.main()
