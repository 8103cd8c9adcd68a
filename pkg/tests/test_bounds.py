"""
Test script for upper and lower bounds on the optimal success probability
"""

import math
import os
import sys
import unittest

import numpy as np

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)) + "/../")

from analytics.bounds import (
    LOWER_BOUND_NAMES,
    UPPER_BOUND_NAMES,
    InequalityCheck,
    bound_fidelity,
    bound_fidelity_pruned,
    bound_renes,
    bound_renes_pruned,
    bound_sqrt_sum,
    bound_sqrt_sum_pruned,
    bound_trace_norm,
    bound_trace_norm_pruned,
    bounds_report,
    equiprobable_conjecture_margin,
    lower_sqrt_sum,
    mirror_bound_gap,
    mirror_renes_bound,
    mirror_renes_bound_pruned,
    pgm_inequality_qubit_triple,
)
from analytics.support import extract_support
from ensembles import (
    DensityMatrix,
    equidistant_triple,
    identical_states,
    mirror_symmetric,
    new_ensemble,
    orthogonal_pair,
)
from sampling import sample_instance, sample_pure_instance
from solver import solve_optimal
from utils.exceptions import InvalidInput, NotApplicable, NotPure

BOUND_SLACK = 1e-9


class TestPgmBounds(unittest.TestCase):
    """Test cases for the PGM-based bound"""

    def test_values(self):
        self.assertAlmostEqual(bound_renes(1.0, 2), 1.0, places=12)
        self.assertAlmostEqual(bound_renes(0.5, 2), 0.5, places=12)
        self.assertAlmostEqual(bound_renes(1.0 / 3.0, 3), 1.0 / 3.0, places=12)

    def test_range(self):
        with self.assertRaises(InvalidInput):
            bound_renes(0.2, 3)
        with self.assertRaises(InvalidInput):
            bound_renes(1.1, 2)

    def test_pruned_mirror(self):
        ensemble = mirror_symmetric(0.4, math.pi / 4)
        self.assertAlmostEqual(bound_renes_pruned(ensemble, [0, 1]), 0.8, places=10)
        self.assertAlmostEqual(mirror_renes_bound_pruned(0.4, math.pi / 4), 0.8, places=12)

    def test_mirror_closed_forms_match_generic(self):
        for p, theta in ((0.4, math.pi / 4), (0.48, 0.9), (0.45, 1.2)):
            ensemble = mirror_symmetric(p, theta)
            self.assertAlmostEqual(
                mirror_renes_bound_pruned(p, theta), bound_renes_pruned(ensemble, [0, 1]), delta=1e-9
            )
            self.assertAlmostEqual(
                mirror_renes_bound(p, theta), bounds_report(ensemble).value("pgm_renes"), delta=1e-9
            )

    def test_gap_at_red_point(self):
        self.assertAlmostEqual(mirror_renes_bound(0.48, 0.9), 0.953345, delta=1e-5)
        self.assertAlmostEqual(mirror_renes_bound_pruned(0.48, 0.9), 0.953682, delta=1e-5)
        self.assertLess(mirror_bound_gap(0.48, 0.9), -1e-4)

    def test_gap_positive_on_diagonal(self):
        self.assertGreater(mirror_bound_gap(0.4, math.pi / 4), 0.0)
        for p in np.linspace(1.0 / 3.0, 0.5, 21):
            self.assertGreaterEqual(mirror_bound_gap(p, math.pi / 4), -1e-12)


class TestFidelityBounds(unittest.TestCase):
    """Test cases for the fidelity bound"""

    def test_mirror_values(self):
        ensemble = mirror_symmetric(0.4, math.pi / 4)
        self.assertAlmostEqual(bound_fidelity(ensemble), 0.92, places=12)
        self.assertAlmostEqual(bound_fidelity_pruned(ensemble, [0, 1]), 0.8, places=12)

    def test_orthogonal_states(self):
        self.assertAlmostEqual(bound_fidelity(orthogonal_pair()), 1.0, places=12)

    def test_needs_pure_states(self):
        with self.assertRaises(NotPure):
            bound_fidelity(identical_states([0.5, 0.5], np.eye(2) / 2))


class TestSqrtSumBounds(unittest.TestCase):
    """Test cases for the square-root-sum bounds"""

    def test_trine_is_tight(self):
        ensemble = equidistant_triple(0.5)
        self.assertAlmostEqual(bound_sqrt_sum(ensemble), 2.0 / math.sqrt(6.0), places=10)
        self.assertAlmostEqual(lower_sqrt_sum(ensemble), 2.0 / 3.0, places=10)

    def test_pruned_never_larger(self):
        rng = np.random.default_rng(3)
        for _ in range(10):
            ensemble = sample_instance(3, 2, rng)
            for support in ([0], [0, 1], [1, 2]):
                self.assertLessEqual(
                    bound_sqrt_sum_pruned(ensemble, support), bound_sqrt_sum(ensemble) + 1e-12
                )


class TestTraceNormBounds(unittest.TestCase):
    """Test cases for the trace-norm bound"""

    def test_orthogonal_pair(self):
        value, j_hat = bound_trace_norm(orthogonal_pair())
        self.assertAlmostEqual(value, 1.0, places=12)
        self.assertEqual(j_hat, 0)

    def test_identical_states(self):
        value, _ = bound_trace_norm(identical_states([1 / 3, 1 / 3, 1 / 3]))
        self.assertAlmostEqual(value, 1.0 / 3.0, places=12)

    def test_singleton_support(self):
        ensemble = equidistant_triple(0.5)
        _, j_hat = bound_trace_norm(ensemble)
        self.assertAlmostEqual(bound_trace_norm_pruned(ensemble, [j_hat]), 1.0 / 3.0, places=12)

    def test_pruned_never_larger(self):
        rng = np.random.default_rng(21)
        for _ in range(10):
            ensemble = sample_pure_instance(4, 2, rng, equiprobable=True)
            full, _ = bound_trace_norm(ensemble)
            for support in ([0], [1, 2], [0, 1, 3]):
                self.assertLessEqual(bound_trace_norm_pruned(ensemble, support), full + 1e-12)

    def test_needs_equal_priors(self):
        with self.assertRaises(NotApplicable):
            bound_trace_norm_pruned(mirror_symmetric(0.4, 0.5), [0, 1])


class TestInequalities(unittest.TestCase):
    """Test cases for the PGM inequalities"""

    def setUp(self):
        kets = [[1.0, 1.0], [1.0, 1j], [1.0, 0.0]]
        self.triple = new_ensemble([1 / 3] * 3, [DensityMatrix.from_ket(k) for k in kets])

    def test_qubit_triple_right_hand_side(self):
        check = pgm_inequality_qubit_triple(self.triple, [0, 1])
        self.assertAlmostEqual(check.rhs, 0.451184, delta=1e-6)
        self.assertAlmostEqual(check.margin, check.lhs - check.rhs, places=15)

    def test_qubit_triple_needs_triple(self):
        with self.assertRaises(NotApplicable):
            pgm_inequality_qubit_triple(orthogonal_pair(), [0, 1])
        with self.assertRaises(NotApplicable):
            pgm_inequality_qubit_triple(self.triple, [0, 1, 2])

    def test_inequality_check(self):
        self.assertTrue(InequalityCheck(lhs=0.5, rhs=0.5 + 1e-13).holds())
        self.assertFalse(InequalityCheck(lhs=0.4, rhs=0.5).holds())

    def test_conjecture_margin(self):
        self.assertAlmostEqual(
            equiprobable_conjecture_margin(self.triple, [0, 1, 2]), 0.0, places=12
        )
        with self.assertRaises(NotApplicable):
            equiprobable_conjecture_margin(mirror_symmetric(0.4, 0.5), [0, 1])


class TestBoundsReport(unittest.TestCase):
    """Test cases for bounds_report"""

    def test_without_support(self):
        report = bounds_report(equidistant_triple(0.7))
        for name in ("pgm_renes_pruned", "fidelity_pruned", "sqrt_sum_pruned", "trace_norm_pruned"):
            self.assertIsNone(report.value(name))
            self.assertEqual(report.entries[name].reason, "no support set given")
        self.assertIsNotNone(report.value("trace_norm"))

    def test_absent_entries_for_mixed_states(self):
        ensemble = sample_instance(3, 2, np.random.default_rng(6))
        report = bounds_report(ensemble, [0, 1, 2])
        self.assertFalse(report.entries["fidelity"].applicable)
        self.assertTrue(report.entries["fidelity"].reason)
        self.assertFalse(report.entries["trace_norm_pruned"].applicable)

    def test_frame(self):
        frame = bounds_report(mirror_symmetric(0.4, math.pi / 4), [0, 1]).to_frame()
        self.assertEqual(list(frame.columns), ["name", "value", "applicable", "reason"])
        self.assertEqual(list(frame["name"]), UPPER_BOUND_NAMES + LOWER_BOUND_NAMES)
        values = dict(zip(frame["name"], frame["value"]))
        self.assertAlmostEqual(values["pgm_renes_pruned"], 0.8, places=10)
        self.assertAlmostEqual(values["fidelity"], 0.92, places=10)

    def test_soundness_on_random_instances(self):
        rng = np.random.default_rng(2718)
        for index in range(1000):
            n, d = (2, 3, 4)[index % 3], (2, 3)[index % 2]
            if index % 5 == 0:
                ensemble = sample_pure_instance(n, d, rng, equiprobable=True)
            else:
                ensemble = sample_instance(n, d, rng)
            result = solve_optimal(ensemble)
            report = bounds_report(ensemble, extract_support(result.povm))
            for name, value in report.upper_bounds().items():
                self.assertGreaterEqual(value, result.p_success - BOUND_SLACK, msg=name)
            self.assertLessEqual(report.value("lower_sqrt_sum"), result.upper_bound + BOUND_SLACK)


if __name__ == "__main__":
    unittest.main()
