"""
Test script to verify logging functionality
"""

import logging
import os
import shutil
import sys
import tempfile
import unittest

# Add the project root to the Python path
sys.path.append(os.path.dirname(os.path.abspath(__file__)) + "/../")

from utils.logger import get_logger, setup_global_logging


class TestLogging(unittest.TestCase):
    """Test cases for logger construction"""

    def setUp(self):
        self.temp_dir = tempfile.mkdtemp()
        self.root = logging.getLogger()
        self.root_handlers = list(self.root.handlers)
        self.root_level = self.root.level

    def tearDown(self):
        for handler in list(self.root.handlers):
            if handler not in self.root_handlers:
                self.root.removeHandler(handler)
                handler.close()
        self.root.setLevel(self.root_level)
        shutil.rmtree(self.temp_dir)

    def test_library_logger_propagates(self):
        logger = get_logger("qsd.test.library")
        self.assertTrue(logger.propagate)
        self.assertEqual(logger.handlers, [])
        with self.assertLogs("qsd.test.library", level="INFO") as captured:
            logger.info("solving")
        self.assertIn("solving", captured.output[0])

    def test_standalone_logger_writes_file(self):
        log_file = os.path.join(self.temp_dir, "nested", "standalone.log")
        logger = get_logger("qsd.test.standalone", log_file=log_file, level="debug")
        try:
            self.assertEqual(logger.level, logging.DEBUG)
            self.assertEqual(len(logger.handlers), 2)
            self.assertFalse(logger.propagate)
            logger.debug("written to file")
            for handler in logger.handlers:
                handler.flush()
            with open(log_file) as f:
                self.assertIn("written to file", f.read())

            # a second call must not stack handlers
            self.assertIs(get_logger("qsd.test.standalone", log_file=log_file), logger)
            self.assertEqual(len(logger.handlers), 2)
        finally:
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()

    def test_global_logging(self):
        log_file = os.path.join(self.temp_dir, "qsd.log")
        setup_global_logging("WARNING", log_file)
        self.assertEqual(self.root.level, logging.WARNING)
        self.assertTrue(os.path.exists(log_file))
        file_handlers = [h for h in self.root.handlers if isinstance(h, logging.FileHandler)]
        self.assertTrue(any(h.baseFilename == os.path.abspath(log_file) for h in file_handlers))

    def test_repeated_setup_keeps_one_file_handler(self):
        log_file = os.path.join(self.temp_dir, "qsd.log")
        setup_global_logging("INFO", log_file)
        setup_global_logging("DEBUG", os.path.join(self.temp_dir, ".", "qsd.log"))
        matching = [
            h
            for h in self.root.handlers
            if isinstance(h, logging.FileHandler) and h.baseFilename == os.path.abspath(log_file)
        ]
        self.assertEqual(len(matching), 1)
        self.assertEqual(matching[0].level, logging.DEBUG)

    def test_unknown_level_falls_back_to_info(self):
        setup_global_logging("chatty")
        self.assertEqual(self.root.level, logging.INFO)


if __name__ == "__main__":
    unittest.main()
