"""
Tests for dwssp.methods: tableaux, the optimal downwind family, order
conditions, stability functions and the method catalog.
"""
import json
import os
import tempfile
import unittest

import numpy as np
from numpy.testing import assert_allclose

from dwssp.exceptions import (DwsspValidationError, MethodFormatError, PoleError,
                              UnsupportedOrderError)
from dwssp.methods import (DownwindLmm, DownwindTableau, RationalStabilityFunction, ShuOsherRep,
                           a_stability_sample, catalog_method, downwind_weight, evaluate_psi,
                           family_tableau, is_stiffly_accurate, lmm_order_residuals, load_method,
                           make_optimal_family, method_from_dict, method_report,
                           method_to_json, psi_at_infinity, rk_order, rk_order_residuals,
                           shu_osher_to_butcher, stability_function, underlying_method)


def _family_psi(z):
    return (1.0 + z / 4.0 + z * z / 64.0) / (1.0 - 3.0 * z / 4.0 + 17.0 * z * z / 64.0)


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------

class TestDownwindTableau(unittest.TestCase):

    def test_c_defaults_to_row_sums(self):
        t = DownwindTableau(A=[[1.0, 0.0], [0.5, 0.5]], Atilde=[[0.0, 0.25], [0.0, 0.0]],
                            b=[0.5, 0.5], btilde=[0.0, 0.0])
        assert_allclose(t.c, [0.75, 1.0])

    def test_inconsistent_c_rejected(self):
        with self.assertRaises(DwsspValidationError):
            DownwindTableau(A=[[1.0]], Atilde=[[0.0]], b=[1.0], btilde=[0.0], c=[0.5])

    def test_shape_mismatch_rejected(self):
        with self.assertRaises(DwsspValidationError):
            DownwindTableau(A=[[0.0, 0.0], [1.0, 0.0]], Atilde=[[0.0]], b=[0.5, 0.5], btilde=[0.0, 0.0])

    def test_arrays_are_read_only(self):
        t = catalog_method("ssprk22")
        with self.assertRaises(ValueError):
            t.A[0, 0] = 1.0

    def test_explicit_classification(self):
        self.assertTrue(catalog_method("ssprk33").is_explicit)
        self.assertFalse(catalog_method("trapezoidal").is_explicit)
        self.assertFalse(family_tableau(8).is_explicit)


class TestShuOsherRep(unittest.TestCase):

    def test_rows_must_sum_to_one(self):
        with self.assertRaises(DwsspValidationError):
            ShuOsherRep(r=1.0, v=[0.5, 0.0], P=[[0.0], [1.0]], Ptilde=[[0.0], [0.0]])

    def test_certificate_flag(self):
        rep = ShuOsherRep(r=1.0, v=[1.0, 0.0], P=[[0.0], [1.0]], Ptilde=[[0.0], [0.0]])
        self.assertTrue(rep.is_certificate())
        self.assertTrue(rep.is_explicit)
        self.assertEqual(rep.min_entry(), 0.0)


class TestDownwindLmm(unittest.TestCase):

    def test_beta_length_checked(self):
        with self.assertRaises(DwsspValidationError):
            DownwindLmm(alpha=[1.0], beta=[1.0], betatilde=[0.0, 0.0])

    def test_explicit_flag(self):
        self.assertTrue(catalog_method("lmm:forward-euler").is_explicit)
        self.assertFalse(catalog_method("lmm:backward-euler").is_explicit)


# ---------------------------------------------------------------------------
# The optimal family
# ---------------------------------------------------------------------------

class TestOptimalFamily(unittest.TestCase):

    def test_shu_osher_form_at_r8(self):
        rep = make_optimal_family(8)
        assert_allclose(rep.v, [1.0 / 24.0, 0.0, 0.0], atol=1e-15)
        assert_allclose(rep.P, [[0.25, 0.0], [1.0, 0.0], [0.0, 1.0]], atol=1e-15)
        assert_allclose(rep.Ptilde, [[0.0, 17.0 / 24.0], [0.0, 0.0], [0.0, 0.0]], atol=1e-15)
        self.assertTrue(rep.is_certificate())

    def test_butcher_form_at_r8(self):
        t = shu_osher_to_butcher(make_optimal_family(8))
        assert_allclose(t.A, [[23.0 / 8.0, 0.0], [3.0, 0.0]], atol=1e-12)
        assert_allclose(t.Atilde, [[0.0, 17.0 / 8.0], [0.0, 17.0 / 8.0]], atol=1e-12)
        assert_allclose(t.b, [3.0, 1.0 / 8.0], atol=1e-12)
        assert_allclose(t.btilde, [0.0, 17.0 / 8.0], atol=1e-12)
        assert_allclose(t.c, [0.75, 0.875], atol=1e-12)

    def test_r_at_or_below_bound_rejected(self):
        for r in (2.0, 2.0 + np.sqrt(2.0), 3.0):
            with self.assertRaises(DwsspValidationError):
                make_optimal_family(r)

    def test_underlying_method(self):
        u = underlying_method(family_tableau(8))
        assert_allclose(u.b, [3.0, -2.0], atol=1e-12)
        assert_allclose(u.A, [[23.0 / 8.0, -17.0 / 8.0], [3.0, -17.0 / 8.0]], atol=1e-12)
        self.assertFalse(u.has_downwind)

    def test_downwind_weight(self):
        self.assertAlmostEqual(downwind_weight(family_tableau(8)), 17.0 / 8.0, places=12)
        self.assertEqual(downwind_weight(catalog_method("ssprk33")), 0.0)

    def test_stiff_accuracy(self):
        self.assertTrue(is_stiffly_accurate(catalog_method("backward-euler")))
        self.assertTrue(is_stiffly_accurate(catalog_method("trapezoidal")))
        self.assertFalse(is_stiffly_accurate(family_tableau(8)))

    def test_family_has_order_two_for_any_r(self):
        for r in (4.0, 8.0, 20.0, 100.0):
            self.assertEqual(rk_order(family_tableau(r), tol=1e-10), 2)


# ---------------------------------------------------------------------------
# Order conditions
# ---------------------------------------------------------------------------

class TestOrderConditions(unittest.TestCase):

    def test_catalog_orders(self):
        expected = {"forward-euler": 1, "backward-euler": 1, "trapezoidal": 2,
                    "ssprk22": 2, "ssprk33": 3}
        for name, order in expected.items():
            self.assertEqual(rk_order(catalog_method(name), tol=1e-12), order, name)

    def test_residual_count(self):
        t = catalog_method("ssprk33")
        self.assertEqual(rk_order_residuals(t, 1).shape, (1,))
        self.assertEqual(rk_order_residuals(t, 2).shape, (2,))
        self.assertEqual(rk_order_residuals(t, 3).shape, (4,))

    def test_order_beyond_three_unsupported(self):
        with self.assertRaises(UnsupportedOrderError):
            rk_order_residuals(catalog_method("ssprk33"), 4)

    def test_order_below_one_rejected(self):
        with self.assertRaises(DwsspValidationError):
            rk_order_residuals(catalog_method("ssprk33"), 0)

    def test_lmm_trapezoidal_is_second_order(self):
        m = catalog_method("lmm:trapezoidal")
        assert_allclose(lmm_order_residuals(m, 2), 0.0, atol=1e-15)
        self.assertGreater(abs(lmm_order_residuals(catalog_method("lmm:backward-euler"), 2)[2]), 0.5)


# ---------------------------------------------------------------------------
# Stability functions
# ---------------------------------------------------------------------------

class TestStabilityFunction(unittest.TestCase):

    def test_family_coefficients_at_r8(self):
        psi = stability_function(family_tableau(8)).normalized()
        assert_allclose(psi.numerator, [1.0, 0.25, 1.0 / 64.0], atol=1e-12)
        assert_allclose(psi.denominator, [1.0, -0.75, 17.0 / 64.0], atol=1e-12)

    def test_family_matches_closed_form_at_random_points(self):
        psi = stability_function(family_tableau(8))
        rng = np.random.default_rng(7)
        z = rng.uniform(-5.0, 5.0, 100) + 1j * rng.uniform(-5.0, 5.0, 100)
        assert_allclose(evaluate_psi(psi, z), _family_psi(z), rtol=1e-10)

    def test_family_value_at_minus_one(self):
        psi = stability_function(family_tableau(8))
        self.assertAlmostEqual(evaluate_psi(psi, -1.0).real, 49.0 / 129.0, places=12)

    def test_family_is_a_stable_on_the_imaginary_axis(self):
        psi = stability_function(family_tableau(8))
        self.assertLessEqual(a_stability_sample(psi, y_max=1e4, samples=100_001), 1.0 + 1e-10)

    def test_family_limit_at_infinity(self):
        psi = stability_function(family_tableau(8))
        self.assertAlmostEqual(psi_at_infinity(psi), 1.0 / 17.0, places=12)
        self.assertAlmostEqual(abs(evaluate_psi(psi, 1e8)), 1.0 / 17.0, delta=1e-6)

    def test_simple_methods(self):
        fe = stability_function(catalog_method("forward-euler"))
        assert_allclose(fe.numerator, [1.0, 1.0])
        assert_allclose(fe.denominator, [1.0])
        self.assertEqual(psi_at_infinity(fe), float("inf"))
        be = stability_function(catalog_method("backward-euler"))
        self.assertEqual(psi_at_infinity(be), 0.0)
        tr = stability_function(catalog_method("trapezoidal")).normalized()
        assert_allclose(tr.numerator, [1.0, 0.5])
        assert_allclose(tr.denominator, [1.0, -0.5])

    def test_pole_detected(self):
        be = stability_function(catalog_method("backward-euler"))
        with self.assertRaises(PoleError):
            evaluate_psi(be, 1.0)

    def test_pole_threshold_uses_largest_coefficient(self):
        psi = RationalStabilityFunction([1.0], [1.0, -1.0])
        with self.assertRaises(PoleError):
            evaluate_psi(psi, 1.0 + 5e-15)
        near = evaluate_psi(psi, 1.0 + 1.5e-14)
        self.assertGreater(abs(near), 1e13)
        with self.assertRaises(PoleError):
            evaluate_psi(psi, np.array([0.5, 1.0, 2.0]))


# ---------------------------------------------------------------------------
# Catalog and JSON
# ---------------------------------------------------------------------------

class TestCatalog(unittest.TestCase):

    def setUp(self):
        self._paths = []

    def tearDown(self):
        for p in self._paths:
            os.unlink(p)

    def _file(self, text: str) -> str:
        f = tempfile.NamedTemporaryFile(mode="w", suffix=".json", delete=False, encoding="utf-8")
        f.write(text)
        f.close()
        self._paths.append(f.name)
        return f.name

    def test_unknown_name(self):
        with self.assertRaises(DwsspValidationError) as ctx:
            catalog_method("rk4")
        self.assertIn("ssprk33", str(ctx.exception))

    def test_family_name(self):
        t = catalog_method("dw-family:8")
        self.assertEqual(t.name, "dw-family:8")
        with self.assertRaises(DwsspValidationError):
            catalog_method("dw-family:2")
        with self.assertRaises(DwsspValidationError):
            catalog_method("dw-family:abc")

    def test_exact_fraction_strings(self):
        t = method_from_dict({"s": 2, "A": [[0, 0], ["1/2", 0]], "b": [0, "1"]})
        assert_allclose(t.A[1, 0], 0.5)

    def test_json_round_trip(self):
        original = family_tableau(8)
        restored = method_from_dict(json.loads(method_to_json(original)))
        assert_allclose(restored.A, original.A)
        assert_allclose(restored.Atilde, original.Atilde)
        assert_allclose(restored.btilde, original.btilde)
        self.assertEqual(restored.name, original.name)

    def test_load_method_file(self):
        path = self._file('{"k": 1, "alpha": [1], "beta": ["1/2", "1/2"]}')
        m = load_method(path)
        self.assertIsInstance(m, DownwindLmm)
        assert_allclose(m.beta, [0.5, 0.5])

    def test_syntax_error_reports_position(self):
        path = self._file('{\n  "s": 1,\n  "A": [[1]]\n  "b": [1]\n}')
        with self.assertRaises(MethodFormatError) as ctx:
            load_method(path)
        self.assertEqual(ctx.exception.line, 4)
        self.assertIsNotNone(ctx.exception.column)

    def test_missing_field_reported(self):
        with self.assertRaises(MethodFormatError) as ctx:
            method_from_dict({"s": 1, "A": [[1]]})
        self.assertEqual(ctx.exception.field, "b")

    def test_malformed_entry(self):
        with self.assertRaises(MethodFormatError):
            method_from_dict({"s": 1, "A": [["x"]], "b": [1]})


class TestMethodReport(unittest.TestCase):

    def test_family_report(self):
        report = method_report(family_tableau(8))
        self.assertEqual(report["order"], 2)
        self.assertFalse(report["explicit"])
        self.assertAlmostEqual(report["stability"]["abs_psi_at_infinity"], 1.0 / 17.0, places=10)
        self.assertTrue(report["stability"]["a_stable"])

    def test_forward_euler_report(self):
        report = method_report(catalog_method("forward-euler"))
        self.assertEqual(report["order"], 1)
        self.assertTrue(report["explicit"])
        self.assertFalse(report["stability"]["a_stable"])
        self.assertEqual(report["stability"]["numerator"], [1.0, 1.0])

    def test_lmm_report(self):
        report = method_report(catalog_method("lmm:trapezoidal"))
        self.assertEqual(report["order"], 2)
        self.assertAlmostEqual(report["Ctilde"], 2.0)


if __name__ == "__main__":
    unittest.main()
