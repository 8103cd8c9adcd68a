"""
Test script for the Monte Carlo experiments
"""

import os
import sys
import unittest

import pandas as pd

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)) + "/../")

from pipeline.experiments import (
    RATE_NAMES,
    coincidence_experiment,
    conjecture_search,
    conjecture_record,
    normal_ci,
    run_indexed,
    support_record,
)
from utils.exceptions import InvalidInput

FAST_SOLVER = {"max_iter": 20000}


def square_record(index):
    return {"index": index, "square": index * index}


class TestNormalCi(unittest.TestCase):
    """Test cases for the binomial confidence interval"""

    def test_half_rate(self):
        low, high = normal_ci(50, 100)
        self.assertAlmostEqual(low, 0.371209, delta=1e-6)
        self.assertAlmostEqual(high, 0.628791, delta=1e-6)

    def test_degenerate_rates(self):
        self.assertEqual(normal_ci(0, 20), (0.0, 0.0))
        self.assertEqual(normal_ci(20, 20), (1.0, 1.0))

    def test_clipped(self):
        low, high = normal_ci(1, 10)
        self.assertEqual(low, 0.0)
        self.assertLess(high, 1.0)

    def test_needs_trials(self):
        with self.assertRaises(InvalidInput):
            normal_ci(0, 0)


class TestRunIndexed(unittest.TestCase):
    """Test cases for the indexed worker runner"""

    def test_sorted_by_index(self):
        frame = run_indexed(square_record, 7, threads=1, chunk_size=3)
        self.assertEqual(frame["index"].tolist(), list(range(7)))
        self.assertEqual(frame["square"].tolist(), [i * i for i in range(7)])

    def test_process_pool(self):
        frame = run_indexed(square_record, 9, threads=2, chunk_size=2)
        self.assertEqual(frame["square"].tolist(), [i * i for i in range(9)])


class TestCoincidenceExperiment(unittest.TestCase):
    """Test cases for the subset/superset coincidence experiment"""

    def test_record_fields(self):
        row = support_record(0, seed=5, n=3, d=2, solver_settings=FAST_SOLVER)
        for key in ("index", "subset", "exact", "superset", "coincide", "sound", "p_opt", "gap"):
            self.assertIn(key, row)
        self.assertIsInstance(row["exact"], str)

    def test_small_run(self):
        stats = coincidence_experiment(20, n=3, d=2, seed=11, solver_settings=FAST_SOLVER)
        self.assertEqual(stats.instances, 20)
        self.assertEqual(len(stats.records), 20)
        for name in RATE_NAMES:
            rate = stats.rate(name)
            low, high = stats.ci99[name]
            self.assertTrue(0.0 <= low <= rate <= high <= 1.0)
        self.assertEqual(stats.violations, int((~stats.records["sound"]).sum()))

        frame = stats.to_frame()
        self.assertEqual(list(frame.columns), ["rate", "value", "ci_low", "ci_high", "instances"])
        self.assertEqual(frame["rate"].tolist(), RATE_NAMES)

    def test_pairs_subset_within_superset(self):
        stats = coincidence_experiment(30, n=2, d=2, seed=3, solver_settings=FAST_SOLVER)
        for _, row in stats.records.iterrows():
            subset = set(row["subset"].split())
            superset = set(row["superset"].split())
            self.assertTrue(subset <= superset)

    def test_supports_settle_outside_ambiguous_band(self):
        stats = coincidence_experiment(400, n=3, d=2, seed=20240917)
        self.assertEqual(stats.unconverged, 0)
        self.assertLess(stats.ambiguous / stats.instances, 0.005)
        self.assertEqual(stats.violations, 0)
        for _, row in stats.records.iterrows():
            subset, exact, superset = (set(row[k].split()) for k in ("subset", "exact", "superset"))
            self.assertTrue(subset <= exact <= superset)

    def test_independent_of_threads(self):
        kwargs = dict(n=3, d=2, seed=7, solver_settings=FAST_SOLVER, chunk_size=5)
        serial = coincidence_experiment(10, threads=1, **kwargs).records
        parallel = coincidence_experiment(10, threads=2, **kwargs).records
        columns = ["index", "subset", "exact", "superset"]
        pd.testing.assert_frame_equal(serial[columns], parallel[columns])

    def test_needs_instances(self):
        with self.assertRaises(InvalidInput):
            coincidence_experiment(0)


class TestConjectureSearch(unittest.TestCase):
    """Test cases for the conjecture search"""

    def test_record(self):
        row = conjecture_record(0, seed=1, n=3, d=2, solver_settings=FAST_SOLVER)
        self.assertEqual(row["seed"], 1)
        self.assertIsNotNone(row["margin"])
        self.assertTrue(row["support"])

    def test_search(self):
        report = conjecture_search(12, n=3, d=2, seed=4, solver_settings=FAST_SOLVER)
        self.assertEqual(report.instances, 12)
        self.assertGreater(report.evaluated, 0)
        self.assertLessEqual(report.evaluated, 12)
        self.assertEqual(
            list(report.counterexamples.columns), ["seed", "index", "support", "margin"]
        )
        self.assertIsNotNone(report.min_margin)

    def test_pure_search(self):
        report = conjecture_search(5, n=3, d=2, seed=4, pure=True, solver_settings=FAST_SOLVER)
        self.assertEqual(report.instances, 5)

    def test_needs_instances(self):
        with self.assertRaises(InvalidInput):
            conjecture_search(0)


if __name__ == "__main__":
    unittest.main()
