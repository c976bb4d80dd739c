import tempfile
import unittest
from pathlib import Path

import numpy as np
import pandas as pd

from spin_cluster_memory.core.exceptions import FileFormatError
from spin_cluster_memory.spectro.processing import Spectrum
from spin_cluster_memory.viz.plots import plot_recovery, plot_spectrum, read_plot_metadata


def _spectrum():
    freqs = np.linspace(-500.0, 500.0, 1001)
    values = sum(s * 6.0 / (6.0 - 1j * (freqs - f)) for f, s in ((-100.0, 1), (100.0, -1)))
    return Spectrum(freqs, values, 1.0)


class TestPlotSpectrum(unittest.TestCase):
    def setUp(self):
        self._tmpdir = tempfile.TemporaryDirectory()
        self.root = Path(self._tmpdir.name)

    def tearDown(self):
        self._tmpdir.cleanup()

    def test_comb_positions_are_marked_and_recorded(self):
        path = plot_spectrum(_spectrum(), [-100.0, 100.0], self.root / "s.svg")
        svg = path.read_text()
        self.assertIn('id="comb-0"', svg)
        self.assertIn('id="comb-1"', svg)
        self.assertNotIn('id="comb-2"', svg)
        self.assertEqual(read_plot_metadata(path), {"comb_offsets_hz": [-100.0, 100.0]})

    def test_same_input_same_bytes(self):
        a = plot_spectrum(_spectrum(), [-100.0, 100.0], self.root / "a.svg").read_bytes()
        b = plot_spectrum(_spectrum(), [-100.0, 100.0], self.root / "b.svg").read_bytes()
        self.assertEqual(a, b)

    def test_conventional_overlay(self):
        path = plot_spectrum(_spectrum(), [-100.0, 100.0], self.root / "c.svg", conventional=_spectrum())
        self.assertTrue(path.exists())

    def test_metadata_missing(self):
        path = self.root / "plain.svg"
        path.write_text('<svg xmlns="http://www.w3.org/2000/svg"></svg>')
        with self.assertRaises(FileFormatError):
            read_plot_metadata(path)


class TestPlotRecovery(unittest.TestCase):
    def setUp(self):
        self._tmpdir = tempfile.TemporaryDirectory()
        self.root = Path(self._tmpdir.name)

    def tearDown(self):
        self._tmpdir.cleanup()

    def test_writes_png(self):
        sweep = pd.DataFrame({"sigma_rel": [0.1, 0.5, 1.0], "recovery_fraction": [1.0, 0.8, 0.2]})
        path = plot_recovery(sweep, self.root / "plots" / "recovery.png")
        self.assertTrue(path.exists())
        self.assertEqual(path.read_bytes()[:4], b"\x89PNG")

    def test_requires_columns(self):
        with self.assertRaises(ValueError):
            plot_recovery(pd.DataFrame({"sigma_rel": [0.1]}))


if __name__ == "__main__":
    unittest.main()
