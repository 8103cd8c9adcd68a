"""
Configuration Management for the Quantum State Discrimination Toolkit
Handles loading and management of solver, support and experiment settings
"""

import copy
import json
import os
from typing import Any, Dict


DEFAULT_CONFIG: Dict[str, Any] = {
    "solver": {
        "tol": 1e-8,
        "max_iter": 100000,
        "rank_tol": 1e-12,
        "check_every": 10,
        "init_mix": 1e-3,
        "polish_trace": 1e-2,
        "settle_low": 1e-8,
        "settle_high": 1e-4,
    },
    "support": {
        "threshold": 1e-6,
        "ambiguous_low": 1e-8,
        "ambiguous_high": 1e-4,
        "pd_tol": 1e-10,
    },
    "experiment": {
        "instances": 10000,
        "n_states": 3,
        "dim": 2,
        "seed": 20240917,
        "threads": 1,
    },
    "logging": {"level": "INFO", "file": "logs/qsd.log"},
    "output": {"dir": "results"},
}

# (section, key, environment variable, type)
ENV_OVERRIDES = [
    ("solver", "tol", "QSD_SOLVER_TOL", float),
    ("solver", "max_iter", "QSD_SOLVER_MAX_ITER", int),
    ("support", "threshold", "QSD_SUPPORT_THRESHOLD", float),
    ("experiment", "seed", "QSD_SEED", int),
    ("experiment", "threads", "QSD_THREADS", int),
    ("logging", "level", "LOG_LEVEL", str),
    ("logging", "file", "LOG_FILE", str),
]


def load_config(config_path: str = "config.json") -> Dict[str, Any]:
    """
    Load configuration from JSON file with environment variable override support

    Args:
        config_path: Path to the configuration file, relative paths are
            resolved against the project root

    Returns:
        Dictionary containing configuration settings
    """
    if not os.path.isabs(config_path):
        project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
        config_file_path = os.path.join(project_root, config_path)
    else:
        config_file_path = config_path

    config = copy.deepcopy(DEFAULT_CONFIG)

    if os.path.exists(config_file_path):
        try:
            with open(config_file_path, "r") as f:
                file_config = json.load(f)
        except json.JSONDecodeError as e:
            raise ValueError(f"Invalid JSON in configuration file: {e}")
        except Exception as e:
            raise RuntimeError(f"Failed to load configuration: {e}")

        for key, value in file_config.items():
            if key in config and isinstance(config[key], dict) and isinstance(value, dict):
                config[key].update(value)
            else:
                config[key] = value

    for section, key, env_name, cast in ENV_OVERRIDES:
        raw = os.getenv(env_name)
        if raw:
            try:
                config.setdefault(section, {})[key] = cast(raw)
            except ValueError as e:
                raise ValueError(f"Invalid value for {env_name}: {raw!r} ({e})")

    return config
