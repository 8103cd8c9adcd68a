"""
Test script for configuration loading and helper functions
"""

import json
import os
import shutil
import sys
import tempfile
import unittest
from unittest import mock

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)) + "/../")

from utils.config import DEFAULT_CONFIG, load_config
from utils.helpers import chunks, clipped_sqrt, format_index_set, parse_index_set

ENV_NAMES = [
    "QSD_SOLVER_TOL",
    "QSD_SOLVER_MAX_ITER",
    "QSD_SUPPORT_THRESHOLD",
    "QSD_SEED",
    "QSD_THREADS",
    "LOG_LEVEL",
    "LOG_FILE",
]


class TestConfig(unittest.TestCase):
    """Test cases for load_config and environment overrides"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.config_path = os.path.join(self.temp_dir, "config.json")
        self.env = mock.patch.dict(os.environ, {name: "" for name in ENV_NAMES})
        self.env.start()

    def tearDown(self):
        self.env.stop()
        shutil.rmtree(self.temp_dir)

    def write(self, content):
        with open(self.config_path, "w") as f:
            f.write(content if isinstance(content, str) else json.dumps(content))

    def test_defaults_when_missing(self):
        config = load_config(os.path.join(self.temp_dir, "absent.json"))
        self.assertEqual(config, DEFAULT_CONFIG)
        self.assertIsNot(config["solver"], DEFAULT_CONFIG["solver"])

    def test_partial_sections_merge(self):
        self.write({"solver": {"tol": 1e-6}, "extra": 1})
        config = load_config(self.config_path)
        self.assertEqual(config["solver"]["tol"], 1e-6)
        self.assertEqual(config["solver"]["max_iter"], DEFAULT_CONFIG["solver"]["max_iter"])
        self.assertEqual(config["extra"], 1)
        self.assertEqual(DEFAULT_CONFIG["solver"]["tol"], 1e-8)

    def test_solver_polish_defaults(self):
        solver = load_config(self.config_path)["solver"]
        self.assertEqual(solver["polish_trace"], 1e-2)
        self.assertEqual((solver["settle_low"], solver["settle_high"]), (1e-8, 1e-4))

    def test_invalid_json(self):
        self.write("{broken")
        with self.assertRaises(ValueError):
            load_config(self.config_path)

    def test_environment_overrides(self):
        self.write({"solver": {"tol": 1e-6}})
        with mock.patch.dict(os.environ, {"QSD_SOLVER_TOL": "1e-10", "QSD_SEED": "7"}):
            config = load_config(self.config_path)
        self.assertEqual(config["solver"]["tol"], 1e-10)
        self.assertEqual(config["experiment"]["seed"], 7)

    def test_invalid_environment_value(self):
        with mock.patch.dict(os.environ, {"QSD_SOLVER_MAX_ITER": "many"}):
            with self.assertRaises(ValueError):
                load_config(self.config_path)


class TestHelpers(unittest.TestCase):
    """Test cases for helper functions"""

    def test_clipped_sqrt(self):
        self.assertEqual(clipped_sqrt(4.0), 2.0)
        self.assertEqual(clipped_sqrt(-1e-14), 0.0)
        with self.assertRaises(ValueError):
            clipped_sqrt(-1e-6)

    def test_chunks(self):
        self.assertEqual(list(chunks([1, 2, 3, 4, 5], 2)), [[1, 2], [3, 4], [5]])

    def test_index_sets(self):
        self.assertEqual(format_index_set({2, 0}), "0 2")
        self.assertEqual(format_index_set([]), "")
        self.assertEqual(parse_index_set("0, 2"), {0, 2})
        self.assertEqual(parse_index_set(format_index_set([3, 1])), {1, 3})


if __name__ == "__main__":
    unittest.main()
