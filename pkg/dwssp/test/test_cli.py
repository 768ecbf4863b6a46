"""
Tests for the dwssp command line (``python -m dwssp``).
"""
import contextlib
import io
import json
import os
import tempfile
import unittest

from dwssp.__main__ import EXIT_IO, EXIT_OK, EXIT_VALIDATION, main

try:
    import yaml  # noqa: F401
    HAS_YAML = True
except ImportError:
    HAS_YAML = False


def _invoke(*argv):
    """Run the CLI and return ``(exit code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestMethodCommands(unittest.TestCase):

    def test_no_command_prints_help(self):
        code, out, _ = _invoke()
        self.assertEqual(code, EXIT_OK)
        self.assertIn("usage: dwssp", out)
        self.assertIn("dwssp certify dw-family:8", out)

    def test_analyze(self):
        code, out, _ = _invoke("analyze", "trapezoidal")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report["order"], 2)
        self.assertTrue(report["stiffly_accurate"])

    def test_analyze_writes_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _, _ = _invoke("analyze", "dw-family:8", "--out", tmp)
            self.assertEqual(code, EXIT_OK)
            with open(os.path.join(tmp, "analysis.json"), encoding="utf-8") as f:
                report = json.load(f)
        self.assertEqual(report["order"], 2)
        self.assertFalse(report["explicit"])

    def test_certify_family(self):
        code, out, _ = _invoke("certify", "dw-family:8", "--tol", "1e-6")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertAlmostEqual(report["Ctilde"], 8.0, delta=1e-5)
        self.assertEqual(report["family_r"], 8.0)
        self.assertTrue(report["family_check"])
        self.assertTrue(report["certificate_valid"])

    def test_certify_multistep(self):
        code, out, _ = _invoke("certify", "lmm:trapezoidal")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["Ctilde"], 2.0)

    def test_optimal_lmm(self):
        code, out, _ = _invoke("optimal-lmm", "--k", "1", "--p", "2")
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertAlmostEqual(report["Ctilde"], 2.0, delta=1e-6)
        self.assertEqual(report["method"]["k"], 1)

    def test_invalid_input_exit_codes(self):
        self.assertEqual(_invoke("certify", "no-such-method")[0], EXIT_VALIDATION)
        self.assertEqual(_invoke("certify", "dw-family:2")[0], EXIT_VALIDATION)
        self.assertEqual(_invoke("certify", "ssprk22", "--tol", "0")[0], EXIT_VALIDATION)
        self.assertEqual(_invoke("optimal-lmm", "--k", "1", "--p", "3")[0], EXIT_VALIDATION)

    def test_malformed_method_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "method.json")
            with open(path, "w", encoding="utf-8") as f:
                f.write('{"s": 1, "A": [[1]] "b": [1]}')
            code, _, err = _invoke("analyze", path)
        self.assertEqual(code, EXIT_VALIDATION)
        self.assertIn("line 1", err)


class TestExperimentCommands(unittest.TestCase):

    def test_validation_creates_no_output(self):
        with tempfile.TemporaryDirectory() as tmp:
            out_dir = os.path.join(tmp, "square")
            code, _, err = _invoke("advect", "--cfl", "-1", "--out", out_dir)
            self.assertEqual(code, EXIT_VALIDATION)
            self.assertIn("cfl", err)
            self.assertFalse(os.path.exists(out_dir))

    def test_bad_arguments(self):
        self.assertEqual(_invoke("converge", "--sizes", "64,32")[0], EXIT_VALIDATION)
        self.assertEqual(_invoke("converge", "--sizes", "a,b")[0], EXIT_VALIDATION)
        self.assertEqual(_invoke("burgers", "--t-end", "0.3")[0], EXIT_VALIDATION)
        self.assertEqual(_invoke("advect", "--n", "16", "--jobs", "0")[0], EXIT_VALIDATION)
        self.assertEqual(_invoke("advect", "--r", "3")[0], EXIT_VALIDATION)

    def test_advect_is_deterministic(self):
        args = ["advect", "--n", "16", "--t-end", "0.25", "--methods", "backward-euler,dw-family:8"]
        with tempfile.TemporaryDirectory() as tmp:
            outputs = []
            for name in ("first", "second"):
                out_dir = os.path.join(tmp, name)
                code, out, _ = _invoke(*args, "--out", out_dir)
                self.assertEqual(code, EXIT_OK)
                self.assertIn("dw-family:8", out)
                files = {}
                for entry in sorted(os.listdir(out_dir)):
                    with open(os.path.join(out_dir, entry), "rb") as f:
                        files[entry] = f.read()
                outputs.append(files)
        self.assertEqual(outputs[0], outputs[1])
        self.assertIn("trace_dw-family-8.csv", outputs[0])
        self.assertIn("plot.gp", outputs[0])

    def test_log_file_error(self):
        with tempfile.TemporaryDirectory() as tmp:
            blocker = os.path.join(tmp, "file")
            with open(blocker, "w", encoding="utf-8") as f:
                f.write("x")
            code, _, _ = _invoke("analyze", "ssprk22", "--log-file", os.path.join(blocker, "run.log"))
        self.assertEqual(code, EXIT_IO)

    @unittest.skipUnless(HAS_YAML, "PyYAML not installed")
    def test_run_missing_config(self):
        with tempfile.TemporaryDirectory() as tmp:
            code, _, _ = _invoke("run", os.path.join(tmp, "missing.yaml"))
        self.assertEqual(code, EXIT_IO)


if __name__ == "__main__":
    unittest.main()
