import tempfile
import unittest
from pathlib import Path

import pandas as pd

from spin_cluster_memory.core.exceptions import FileFormatError
from spin_cluster_memory.utils.io_utils import read_csv, read_json, write_csv, write_json, write_text_atomic


class TestIoUtils(unittest.TestCase):
    def setUp(self):
        self._tmpdir = tempfile.TemporaryDirectory()
        self.root = Path(self._tmpdir.name)

    def tearDown(self):
        self._tmpdir.cleanup()

    def test_atomic_write_creates_parents_and_leaves_no_temp_files(self):
        path = write_text_atomic(self.root / "a" / "b" / "out.txt", "hello\n")
        self.assertEqual(path.read_text(), "hello\n")
        self.assertEqual([p.name for p in path.parent.iterdir()], ["out.txt"])

    def test_json_is_sorted_and_newline_terminated(self):
        path = write_json(self.root / "x.json", {"b": 1, "a": [1.5, 2]})
        text = path.read_text()
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertTrue(text.endswith("}\n"))
        self.assertEqual(read_json(path), {"a": [1.5, 2], "b": 1})

    def test_malformed_json(self):
        path = self.root / "bad.json"
        path.write_text("{not json")
        with self.assertRaises(FileFormatError):
            read_json(path)

    def test_csv_round_trip_and_required_columns(self):
        df = pd.DataFrame({"freq_hz": [-1.0, 0.0, 1.0], "re": [0.1, 0.2, 0.3]})
        path = write_csv(df, self.root / "s.csv")
        pd.testing.assert_frame_equal(read_csv(path, required_columns=["freq_hz", "re"]), df)
        with self.assertRaises(FileFormatError):
            read_csv(path, required_columns=["im"])

    def test_missing_csv(self):
        with self.assertRaises(FileFormatError):
            read_csv(self.root / "nope.csv")


if __name__ == "__main__":
    unittest.main()
