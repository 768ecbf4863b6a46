"""
Unit tests for the dwssp exception hierarchy and input validation helpers
"""
import json
import os
import tempfile
import unittest
from fractions import Fraction

import numpy as np

from dwssp.exceptions import (CertificationError, ConvergenceError, DwsspError,
                              DwsspValidationError, ExperimentError, HistoryLengthError,
                              InfeasibleOrderError, LpCyclingError, MethodFormatError,
                              NegativeGammaError, NotExplicitError, PoleError,
                              SingularMatrixError, SolverError, UnboundedCoefficientError,
                              UnsupportedOrderError)
from dwssp.utils import Utils


class TestExceptionHierarchy(unittest.TestCase):

    def test_validation_errors_are_value_errors(self):
        for exc in (DwsspValidationError, MethodFormatError, UnsupportedOrderError,
                    NotExplicitError, NegativeGammaError, ExperimentError):
            self.assertTrue(issubclass(exc, ValueError), exc.__name__)
            self.assertTrue(issubclass(exc, DwsspError), exc.__name__)

    def test_runtime_errors_are_not_validation_errors(self):
        for exc in (SingularMatrixError, PoleError, InfeasibleOrderError, UnboundedCoefficientError,
                    LpCyclingError, CertificationError, SolverError, ConvergenceError,
                    HistoryLengthError):
            self.assertTrue(issubclass(exc, DwsspError), exc.__name__)
            self.assertFalse(issubclass(exc, DwsspValidationError), exc.__name__)
        self.assertTrue(issubclass(ConvergenceError, SolverError))
        self.assertTrue(issubclass(HistoryLengthError, SolverError))

    def test_exception_payloads(self):
        err = MethodFormatError("bad", line=3, column=7)
        self.assertEqual((err.line, err.column, err.field), (3, 7, None))
        self.assertEqual(UnboundedCoefficientError("cap", cap=64.0).cap, 64.0)
        self.assertEqual(LpCyclingError("loop", pivots=12).pivots, 12)
        conv = ConvergenceError("stalled", iterations=4, residual_history=[1.0, 0.5])
        self.assertEqual(conv.iterations, 4)
        self.assertEqual(conv.final_residual, 0.5)
        self.assertTrue(np.isnan(ConvergenceError("empty").final_residual))


class TestUtilsValidation(unittest.TestCase):

    def test_parse_number(self):
        self.assertEqual(Utils.parse_number("17/8"), 2.125)
        self.assertEqual(Utils.parse_number(" 0.25 "), 0.25)
        self.assertEqual(Utils.parse_number(3), 3.0)
        self.assertEqual(Utils.parse_number(Fraction(1, 3)), 1.0 / 3.0)

    def test_parse_number_rejects(self):
        for bad in (True, None, "abc", "1/0", float("nan"), float("inf"), [1.0]):
            with self.assertRaises(ValueError, msg=repr(bad)):
                Utils.parse_number(bad)

    def test_parse_matrix_reports_position(self):
        with self.assertRaises(ValueError) as ctx:
            Utils.parse_matrix([[1, 2], [3, "x"]], "A")
        self.assertIn("A[1][1]", str(ctx.exception))
        with self.assertRaises(ValueError):
            Utils.parse_matrix("1,2", "A")

    def test_readonly(self):
        arr = Utils.readonly([[1, 2], [3, 4]], ndim=2)
        self.assertEqual(arr.dtype, np.float64)
        with self.assertRaises(ValueError):
            arr[0, 0] = 5.0
        with self.assertRaises(ValueError):
            Utils.readonly([1.0, 2.0], ndim=2)
        with self.assertRaises(ValueError):
            Utils.readonly([1.0, np.inf])


class TestAtomicWrites(unittest.TestCase):

    def test_atomic_write_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "nested", "report.json")
            Utils.atomic_write_json(path, {"b": 1, "a": [1.5]})
            self.assertEqual(Utils.read_json(path), {"a": [1.5], "b": 1})
            with open(path, encoding="utf-8") as f:
                self.assertEqual(f.read(), json.dumps({"a": [1.5], "b": 1}, indent=2) + "\n")
            self.assertEqual(os.listdir(os.path.dirname(path)), ["report.json"])

    def test_failed_write_keeps_previous_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "out.txt")
            Utils.atomic_write_text(path, "first\n")
            with self.assertRaises(TypeError):
                Utils.atomic_write_text(path, None)
            with open(path, encoding="utf-8") as f:
                self.assertEqual(f.read(), "first\n")
            self.assertFalse(os.path.exists(path + ".tmp"))


if __name__ == "__main__":
    unittest.main()
