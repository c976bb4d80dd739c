import copy
import logging
from pathlib import Path

import yaml

logger = logging.getLogger(__name__)

# Fallbacks for configs/simulation.yaml.
SIMULATION_DEFAULTS = {
    "system": {
        "geometry": "chain",
        "spins": 6,
        "d_nn_hz": 800.0,
        "spread_hz": 1000.0,
        "seed": 7,
        "max_spins": 12,
    },
    "comb": {
        "spacing_hz": 200.0,
        "amp_hz": 3.0,
        "base_offset_hz": None,
    },
    "pulse": {
        "duration_s": 0.3,
        "sample_step_s": 2.0e-5,
    },
    "propagation": {
        "dt_s": None,
    },
    "acquisition": {
        "points": 8192,
        "dwell_s": 5.0e-5,
        "delay_s": 1.0e-3,
        "t2star_s": 0.026525823848649224,  # 1 / (pi * 12 Hz)
        "noise": 0.0,
        "transients": 512,
        "seed": 7,
    },
    "readout": {
        "zero_fill": 2,
        "margin_threshold": 0.2,
        "weak_reference_factor": 10.0,
        "apodize_hz": None,
        "hann_t2star": 2.0,
    },
}


def load_config(path: str | Path | None = None) -> dict:
    """
    Load a YAML configuration file safely.
    If path is None, load configs/data.yaml from the project root.
    """
    if path is None:
        from spin_cluster_memory.utils.project_root import get_project_root
        path = get_project_root() / "configs" / "data.yaml"
    path = Path(path)

    try:
        if not path.exists():
            logger.error(f"Config file not found: {path.resolve()}")
            return {}

        with path.open("r", encoding="utf-8") as f:
            data = yaml.safe_load(f)

        if not isinstance(data, dict):
            logger.error(f"Config root must be a dictionary: {path.resolve()}")
            return {}

        return data

    except yaml.YAMLError as e:
        logger.error(f"YAML parsing error in {path.resolve()}: {e}")
        return {}


def merge_sections(defaults: dict, overrides: dict) -> dict:
    """Overlay ``overrides`` on ``defaults`` one section deep."""
    merged = copy.deepcopy(defaults)
    for section, values in (overrides or {}).items():
        if isinstance(values, dict) and isinstance(merged.get(section), dict):
            merged[section].update(values)
        else:
            merged[section] = values
    return merged


def load_simulation_defaults(path: str | Path | None = None) -> dict:
    """
    Simulation defaults from configs/simulation.yaml merged over the
    built-in SIMULATION_DEFAULTS. A missing file leaves the built-ins.
    """
    if path is None:
        from spin_cluster_memory.utils.project_root import get_project_root
        try:
            path = get_project_root() / "configs" / "simulation.yaml"
        except RuntimeError:
            return copy.deepcopy(SIMULATION_DEFAULTS)
    path = Path(path)
    if not path.exists():
        logger.debug(f"No simulation config at {path}; using built-in defaults")
        return copy.deepcopy(SIMULATION_DEFAULTS)
    return merge_sections(SIMULATION_DEFAULTS, load_config(path))
