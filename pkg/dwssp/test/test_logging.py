#!/usr/bin/env python3
"""
Tests for dwssp.logging_config.
"""

import logging
import os
import tempfile
import unittest

from dwssp.logging_config import configure_logging


class TestLoggingConfig(unittest.TestCase):

    def tearDown(self):
        root = logging.getLogger()
        for handler in list(root.handlers):
            if isinstance(handler, logging.FileHandler):
                root.removeHandler(handler)
                handler.close()
        logging.getLogger("dwssp").setLevel(logging.NOTSET)

    def test_configure_logging_does_not_raise(self):
        """configure_logging() must be callable without error."""
        try:
            configure_logging()
        except Exception as exc:
            self.fail(f"configure_logging() raised an unexpected exception: {exc}")

    def test_package_logger_level(self):
        configure_logging(logging.DEBUG)
        self.assertEqual(logging.getLogger("dwssp").level, logging.DEBUG)
        self.assertTrue(logging.getLogger("dwssp.solver.integrate").isEnabledFor(logging.DEBUG))

    def test_log_file_created(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "logs", "dwssp.log")
            configure_logging(logging.INFO, path)
            logging.getLogger("dwssp.test").info("bisection settled")
            for handler in logging.getLogger().handlers:
                handler.flush()
            with open(path, encoding="utf-8") as f:
                contents = f.read()
            self.tearDown()
        self.assertIn("dwssp.test - INFO - bisection settled", contents)

    def test_log_file_is_replaced(self):
        with tempfile.TemporaryDirectory() as tmp:
            configure_logging(logging.INFO, os.path.join(tmp, "first.log"))
            configure_logging(logging.INFO, os.path.join(tmp, "second.log"))
            files = [h.baseFilename for h in logging.getLogger().handlers
                     if isinstance(h, logging.FileHandler)]
            self.tearDown()
        self.assertEqual(files, [os.path.join(tmp, "second.log")])


if __name__ == "__main__":
    unittest.main()
