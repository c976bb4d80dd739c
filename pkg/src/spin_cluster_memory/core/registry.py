from pathlib import Path
from typing import Dict, Optional

from spin_cluster_memory.core.config import load_config
from spin_cluster_memory.utils.project_root import get_project_root
from spin_cluster_memory.utils.validation import validate_config_structure

# Default structure if keys are missing in config
DEFAULT_STRUCTURE = {
    "data": {
        "data_dir": "data",
        "systems_dir": "data/systems",
        "runs_dir": "data/runs",
    },
    "reports": {
        "reports_dir": "reports",
        "plots_dir": "reports/plots",
    },
    "logs": {"logs_dir": "logs"},
}


class PathRegistry:
    """Read paths from config + defaults and resolve relative to root."""

    def __init__(self, root: Path, config: Optional[Dict] = None, create_dirs: bool = True):
        self.root = Path(root).resolve()
        self._create_dirs = create_dirs

        merged_config = {}
        config = config or {}
        for section, defaults in DEFAULT_STRUCTURE.items():
            merged_section = dict(defaults)
            merged_section.update(config.get(section, {}) or {})
            merged_config[section] = merged_section
        self.config = merged_config

        validate_config_structure(self.config)

        for section in DEFAULT_STRUCTURE:
            setattr(self, section, self._init_section(self.config[section]))

    def _init_section(self, section_config: Dict[str, str]) -> Dict[str, Path]:
        """Resolve section paths and optionally create directories."""
        container: Dict[str, Path] = {}
        for key, rel_path in section_config.items():
            path = (self.root / rel_path).resolve()
            if self._create_dirs:
                path.mkdir(parents=True, exist_ok=True)
            container[key] = path
        return container


class Settings:
    """Main settings object exposing path sections as properties."""

    def __init__(self, root: Optional[Path] = None, config: Optional[Dict] = None, create_dirs: bool = False):
        self.root = Path(root).resolve() if root else get_project_root()
        self.config = config if config is not None else load_config()
        self.paths = PathRegistry(self.root, self.config, create_dirs=create_dirs)

    @property
    def DATA(self) -> Dict[str, Path]:
        return self.paths.data

    @property
    def REPORTS(self) -> Dict[str, Path]:
        return self.paths.reports

    @property
    def LOGS(self) -> Dict[str, Path]:
        return self.paths.logs


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Process-wide settings, built on first use (no directories created)."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings
