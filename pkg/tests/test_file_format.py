"""
Test script for the ensemble text format
"""

import os
import shutil
import sys
import tempfile
import unittest

import numpy as np
import numpy.testing as npt

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)) + "/../")

from ensembles import equidistant_triple, parse_ensemble_text, read_ensemble, write_ensemble
from ensembles.file_format import format_ensemble
from utils.exceptions import EnsembleFormatError, InvalidEnsemble

TRINE_TEXT = """# trine states, equal priors
dim 2
N 3
state 0.3333333333333333
1,0 0,0
0,0 0,0
state 0.3333333333333333
0.25,0 -0.4330127018922193,0
-0.4330127018922193,0 0.75,0
state 0.3333333333333333
0.25,0 0.4330127018922193,0
0.4330127018922193,0 0.75,0
"""


class TestParseEnsembleText(unittest.TestCase):
    """Test cases for parse_ensemble_text"""

    def test_trine(self):
        ensemble = parse_ensemble_text(TRINE_TEXT)
        self.assertEqual(ensemble.n, 3)
        self.assertEqual(ensemble.dim, 2)
        npt.assert_allclose(ensemble.priors, [1 / 3] * 3, atol=1e-15)
        npt.assert_allclose(ensemble.states[1].matrix[0, 1], -0.4330127018922193)

    def test_comments_blank_lines_and_bare_reals(self):
        text = "\n# header\ndim 2   # two levels\n\nN 1\nstate 1.0\n0.5 0.5\n0.5 0.5\n"
        ensemble = parse_ensemble_text(text)
        npt.assert_allclose(ensemble.states[0].matrix, [[0.5, 0.5], [0.5, 0.5]])

    def test_complex_entries(self):
        text = "dim 2\nN 1\nstate 1\n0.5,0 0,-0.5\n0,0.5 0.5,0\n"
        ensemble = parse_ensemble_text(text)
        self.assertEqual(complex(ensemble.states[0].matrix[0, 1]), -0.5j)

    def test_missing_header(self):
        with self.assertRaises(EnsembleFormatError):
            parse_ensemble_text("")
        with self.assertRaises(EnsembleFormatError) as ctx:
            parse_ensemble_text("N 1\ndim 2\n")
        self.assertEqual(ctx.exception.line, 1)

    def test_bad_entry_reports_line(self):
        text = TRINE_TEXT.replace("0.25,0 -0.4330127018922193,0", "0.25,0 abc")
        with self.assertRaises(EnsembleFormatError) as ctx:
            parse_ensemble_text(text)
        self.assertEqual(ctx.exception.line, 8)

    def test_wrong_row_length(self):
        text = "dim 2\nN 1\nstate 1\n1 0 0\n0 0\n"
        with self.assertRaises(EnsembleFormatError) as ctx:
            parse_ensemble_text(text)
        self.assertEqual(ctx.exception.line, 4)

    def test_missing_state_and_trailing_content(self):
        with self.assertRaises(EnsembleFormatError):
            parse_ensemble_text("dim 2\nN 2\nstate 1\n1 0\n0 0\n")
        with self.assertRaises(EnsembleFormatError):
            parse_ensemble_text("dim 2\nN 1\nstate 1\n1 0\n0 0\nstate 0\n")

    def test_prior_sum(self):
        text = "dim 2\nN 1\nstate 0.8\n1 0\n0 0\n"
        with self.assertRaises(InvalidEnsemble):
            parse_ensemble_text(text)

    def test_non_psd_matrix(self):
        text = "dim 2\nN 1\nstate 1\n1.5 0\n0 -0.5\n"
        with self.assertRaises(InvalidEnsemble):
            parse_ensemble_text(text)

    def test_format_errors_are_value_errors(self):
        with self.assertRaises(ValueError):
            parse_ensemble_text("dim two\nN 1\n")


class TestEnsembleFiles(unittest.TestCase):
    """Test cases for reading and writing ensemble files"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.temp_dir)

    def test_write_then_read(self):
        ensemble = equidistant_triple(0.6)
        path = os.path.join(self.temp_dir, "nested", "triple.txt")
        write_ensemble(ensemble, path)
        loaded = read_ensemble(path)
        npt.assert_allclose(loaded.priors, ensemble.priors, rtol=1e-15)
        for a, b in zip(loaded.states, ensemble.states):
            np.testing.assert_array_equal(a.matrix, b.matrix)

    def test_written_text_uses_lf(self):
        path = os.path.join(self.temp_dir, "triple.txt")
        write_ensemble(equidistant_triple(0.9), path)
        with open(path, "rb") as f:
            raw = f.read()
        self.assertNotIn(b"\r\n", raw)
        self.assertTrue(format_ensemble(equidistant_triple(0.9)).startswith("#"))

    def test_missing_file(self):
        with self.assertRaises(EnsembleFormatError):
            read_ensemble(os.path.join(self.temp_dir, "absent.txt"))


if __name__ == "__main__":
    unittest.main()
