"""
Test script for the command-line entry point
"""

import json
import math
import os
import shutil
import sys
import tempfile
import unittest

import pandas as pd

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)) + "/../")

from analytics.bounds import LOWER_BOUND_NAMES, UPPER_BOUND_NAMES
from ensembles import equidistant_triple, mirror_symmetric, orthogonal_pair, write_ensemble
from main import EXIT_INPUT, EXIT_NOT_CONVERGED, EXIT_OK, main


class TestCommandLine(unittest.TestCase):
    """Test cases for the qsd subcommands"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.config_path = self.write_config({})

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def path(self, name):
        return os.path.join(self.temp_dir, name)

    def write_config(self, overrides, name="config.json"):
        config = {
            "logging": {"level": "WARNING", "file": ""},
            "output": {"dir": self.path("results")},
        }
        config.update(overrides)
        path = self.path(name)
        with open(path, "w") as f:
            json.dump(config, f)
        return path

    def run_cli(self, *args, config=None):
        return main(["--config", config or self.config_path, *args])

    def test_discriminate(self):
        ensemble_path = self.path("trine.txt")
        write_ensemble(equidistant_triple(0.5), ensemble_path)
        out = self.path("trine.json")

        code = self.run_cli("discriminate", "--ensemble", ensemble_path, "--out", out)
        self.assertEqual(code, EXIT_OK)
        with open(out) as f:
            payload = json.load(f)
        self.assertAlmostEqual(payload["p_success"], 2.0 / 3.0, delta=1e-7)
        self.assertEqual(payload["support"], "0 1 2")
        self.assertEqual(len(payload["povm"]), 3)
        self.assertEqual(
            [b["name"] for b in payload["bounds"]], UPPER_BOUND_NAMES + LOWER_BOUND_NAMES
        )

    def test_default_output_directory(self):
        ensemble_path = self.path("pair.txt")
        write_ensemble(orthogonal_pair(), ensemble_path)
        self.assertEqual(self.run_cli("discriminate", "--ensemble", ensemble_path), EXIT_OK)
        self.assertTrue(os.path.exists(self.path(os.path.join("results", "discriminate.json"))))

    def test_bad_ensemble_files(self):
        malformed = self.path("bad.txt")
        with open(malformed, "w") as f:
            f.write("dim 2\nN 1\nstate 1.0\n1 0\n")
        self.assertEqual(self.run_cli("discriminate", "--ensemble", malformed), EXIT_INPUT)
        missing = self.path("missing.txt")
        self.assertEqual(self.run_cli("discriminate", "--ensemble", missing), EXIT_INPUT)

    def test_not_converged_still_writes(self):
        ensemble_path = self.path("mirror.txt")
        write_ensemble(mirror_symmetric(0.4, math.pi / 4), ensemble_path)
        out = self.path("mirror.json")
        config = self.write_config({"solver": {"max_iter": 0}}, name="slow.json")

        code = self.run_cli("discriminate", "--ensemble", ensemble_path, "--out", out, config=config)
        self.assertEqual(code, EXIT_NOT_CONVERGED)
        with open(out) as f:
            payload = json.load(f)
        self.assertFalse(payload["converged"])

    def test_bounds_with_support(self):
        ensemble_path = self.path("pair.txt")
        write_ensemble(orthogonal_pair(), ensemble_path)
        out = self.path("bounds.csv")

        code = self.run_cli("bounds", "--ensemble", ensemble_path, "--support", "0 1", "--out", out)
        self.assertEqual(code, EXIT_OK)
        frame = pd.read_csv(out)
        self.assertEqual(list(frame["name"]), UPPER_BOUND_NAMES + LOWER_BOUND_NAMES)
        values = dict(zip(frame["name"], frame["value"]))
        self.assertAlmostEqual(values["fidelity"], 1.0, places=9)

    def test_fig1(self):
        out = self.path("fig1.csv")
        self.assertEqual(self.run_cli("fig1", "--steps", "3", "--out", out), EXIT_OK)
        self.assertEqual(len(pd.read_csv(out)), 3)
        with open(out, "rb") as f:
            self.assertNotIn(b"\r\n", f.read())

    def test_fig1_invalid_alpha(self):
        out = self.path("fig1.csv")
        self.assertEqual(self.run_cli("fig1", "--alpha-min", "0.2", "--out", out), EXIT_INPUT)
        self.assertFalse(os.path.exists(out))

    def test_fig2(self):
        out = self.path("fig2.csv")
        self.assertEqual(self.run_cli("fig2", "--grid", "5", "--out", out), EXIT_OK)
        frame = pd.read_csv(out)
        self.assertEqual(len(frame), 25)
        self.assertEqual(list(frame.columns), ["theta", "p", "region", "inequality", "gap", "tag"])

    def test_fig3(self):
        out = self.path("fig3.csv")
        self.assertEqual(self.run_cli("fig3", "--grid", "3", "--out", out), EXIT_OK)
        frame = pd.read_csv(out, keep_default_na=False)
        self.assertEqual(len(frame), 9)
        self.assertTrue(set(frame["tag"]) <= {"G", "B", "R"})

    def test_fig4(self):
        out = self.path("fig4.csv")
        records = self.path("records.csv")
        code = self.run_cli(
            "fig4", "--instances", "5", "--seed", "3", "--out", out, "--records", records
        )
        self.assertEqual(code, EXIT_OK)
        frame = pd.read_csv(out)
        self.assertEqual(list(frame["instances"].unique()), [5])
        self.assertEqual(len(pd.read_csv(records)), 5)

    def test_conjecture(self):
        out = self.path("conjecture.csv")
        code = self.run_cli("conjecture", "--instances", "4", "--seed", "2", "--out", out)
        self.assertEqual(code, EXIT_OK)
        frame = pd.read_csv(out)
        self.assertEqual(list(frame.columns), ["seed", "index", "support", "margin"])

    def test_threads_option(self):
        serial, pooled = self.path("serial.csv"), self.path("pooled.csv")
        self.assertEqual(self.run_cli("fig2", "--grid", "4", "--out", serial), EXIT_OK)
        self.assertEqual(
            self.run_cli("fig2", "--grid", "4", "--threads", "2", "--out", pooled), EXIT_OK
        )
        pd.testing.assert_frame_equal(pd.read_csv(serial), pd.read_csv(pooled))
        out = self.path("fig1.csv")
        code = self.run_cli("fig1", "--steps", "2", "--threads", "2", "--out", out)
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(len(pd.read_csv(out)), 2)

    def test_invalid_config(self):
        path = self.path("broken.json")
        with open(path, "w") as f:
            f.write("{not json")
        self.assertEqual(self.run_cli("fig2", "--grid", "3", config=path), EXIT_INPUT)


if __name__ == "__main__":
    unittest.main()
