import tempfile
import unittest
from pathlib import Path
from unittest import mock

from spin_cluster_memory.core.registry import DEFAULT_STRUCTURE, PathRegistry, Settings

SAMPLE_CONFIG = {
    "data": {
        "data_dir": "data",
        "systems_dir": "data/systems",
        "runs_dir": "data/runs",
    },
    "logs": {"logs_dir": "logs"},
    "reports": {"reports_dir": "reports", "plots_dir": "reports/plots"},
}


class TestRegistryWithSampleConfig(unittest.TestCase):
    def setUp(self):
        self._tmpdir = tempfile.TemporaryDirectory()
        self.project_root = Path(self._tmpdir.name) / "project_root"
        self.project_root.mkdir(parents=True, exist_ok=True)

        self._validate_patcher = mock.patch(
            "spin_cluster_memory.core.registry.validate_config_structure"
        )
        self.mock_validate = self._validate_patcher.start()

    def tearDown(self):
        self._validate_patcher.stop()
        self._tmpdir.cleanup()

    def test_all_paths_resolved_and_created(self):
        """Every configured path is resolved under the root and created."""
        registry = PathRegistry(self.project_root, SAMPLE_CONFIG, create_dirs=True)

        for section in ("data", "logs", "reports"):
            resolved = getattr(registry, section)
            for key, rel in SAMPLE_CONFIG[section].items():
                self.assertIn(key, resolved, f"{key} missing from registry.{section}")
                expected = (self.project_root / rel).resolve()
                self.assertEqual(resolved[key], expected)
                self.assertTrue(expected.exists() and expected.is_dir())

    def test_no_creation_when_create_dirs_false(self):
        registry = PathRegistry(self.project_root, SAMPLE_CONFIG, create_dirs=False)

        expected_runs = (self.project_root / "data/runs").resolve()
        self.assertEqual(registry.data["runs_dir"], expected_runs)
        self.assertFalse(expected_runs.exists(), "data/runs should not exist when create_dirs=False")

    def test_missing_keys_fall_back_to_defaults(self):
        registry = PathRegistry(self.project_root, {"data": {"runs_dir": "elsewhere"}}, create_dirs=False)

        self.assertEqual(registry.data["runs_dir"], (self.project_root / "elsewhere").resolve())
        self.assertEqual(
            registry.data["systems_dir"],
            (self.project_root / DEFAULT_STRUCTURE["data"]["systems_dir"]).resolve(),
        )

    def test_validate_config_structure_called_with_merged_config(self):
        _ = PathRegistry(self.project_root, SAMPLE_CONFIG, create_dirs=False)
        self.mock_validate.assert_called_once_with(SAMPLE_CONFIG)


class TestSettingsUsingSampleConfig(unittest.TestCase):
    def setUp(self):
        self._tmpdir = tempfile.TemporaryDirectory()
        self.project_root = Path(self._tmpdir.name) / "root"
        self.project_root.mkdir(parents=True, exist_ok=True)

        self._get_root_patcher = mock.patch(
            "spin_cluster_memory.core.registry.get_project_root", return_value=self.project_root
        )
        self.mock_get_root = self._get_root_patcher.start()

    def tearDown(self):
        self._get_root_patcher.stop()
        self._tmpdir.cleanup()

    def test_settings_exposes_properties_and_resolves_paths(self):
        settings = Settings(config=SAMPLE_CONFIG, create_dirs=True)

        self.assertIs(settings.DATA, settings.paths.data)
        self.assertIs(settings.LOGS, settings.paths.logs)
        self.assertIs(settings.REPORTS, settings.paths.reports)

        self.assertEqual(settings.DATA["systems_dir"], (self.project_root / "data/systems").resolve())
        self.assertEqual(settings.LOGS["logs_dir"], (self.project_root / "logs").resolve())
        self.assertEqual(settings.REPORTS["plots_dir"], (self.project_root / "reports/plots").resolve())

    def test_bad_section_type_is_rejected(self):
        with self.assertRaises(ValueError):
            Settings(config={"data": "not-a-mapping"})


if __name__ == "__main__":
    unittest.main()
