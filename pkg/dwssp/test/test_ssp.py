"""
Tests for dwssp.ssp: the simplex, feasibility certificates, bisection,
gamma expansions and optimal multistep methods.
"""
import math
import unittest

import numpy as np
from numpy.testing import assert_allclose

from dwssp.exceptions import (CertificationError, DwsspValidationError, NotExplicitError,
                              UnboundedCoefficientError)
from dwssp.methods import (DownwindLmm, catalog_method, family_tableau, lmm_order_residuals,
                           make_optimal_family, shu_osher_to_butcher)
from dwssp.ssp import (LinearProgram, amplification_gamma, bisect_feasibility,
                       certification_report, lemma_reduction, lmm_downwind_ssp_coefficient,
                       lp_feasible, lp_solve, optimal_lmm, rk_downwind_ssp_coefficient,
                       rk_feasible_at, rk_ssp_coefficient, verify_stage_bound)


# ---------------------------------------------------------------------------
# Simplex
# ---------------------------------------------------------------------------

class TestSimplex(unittest.TestCase):

    def test_feasible_simplex(self):
        result = lp_feasible(LinearProgram(A_eq=[[1.0, 1.0]], b_eq=[1.0]))
        self.assertTrue(result.feasible)
        self.assertAlmostEqual(result.x.sum(), 1.0)
        self.assertGreaterEqual(result.x.min(), 0.0)

    def test_infeasible(self):
        result = lp_feasible(LinearProgram(A_eq=[[1.0, 1.0]], b_eq=[-1.0]))
        self.assertFalse(result.feasible)
        self.assertIsNone(result.x)

    def test_contradictory_rows(self):
        lp = LinearProgram(A_eq=[[1.0, 0.0], [1.0, 0.0]], b_eq=[1.0, 2.0])
        self.assertFalse(lp_feasible(lp).feasible)

    def test_redundant_rows(self):
        lp = LinearProgram(A_eq=[[1.0, 1.0], [2.0, 2.0]], b_eq=[1.0, 2.0])
        self.assertTrue(lp_feasible(lp).feasible)

    def test_phase_two_minimizes(self):
        lp = LinearProgram(A_eq=[[1.0, 1.0, 1.0]], b_eq=[1.0], objective=[3.0, 1.0, 2.0])
        result = lp_solve(lp)
        self.assertEqual(result.status, "optimal")
        assert_allclose(result.x, [0.0, 1.0, 0.0], atol=1e-12)
        self.assertAlmostEqual(result.objective_value, 1.0)

    def test_shape_mismatch(self):
        with self.assertRaises(DwsspValidationError):
            LinearProgram(A_eq=[[1.0, 1.0]], b_eq=[1.0, 2.0])


# ---------------------------------------------------------------------------
# Runge-Kutta certificates
# ---------------------------------------------------------------------------

class TestFeasibility(unittest.TestCase):

    def test_family_feasible_below_r(self):
        result = rk_feasible_at(family_tableau(8), 7.9)
        self.assertTrue(result.feasible)
        cert = result.certificate
        self.assertLessEqual(cert.consistency_residual(), 1e-12)
        self.assertTrue(cert.is_certificate(1e-9))

    def test_family_infeasible_above_r(self):
        self.assertFalse(rk_feasible_at(family_tableau(8), 8.5).feasible)

    def test_certificate_reproduces_tableau(self):
        t = family_tableau(8)
        cert = rk_feasible_at(t, 6.0).certificate
        back = shu_osher_to_butcher(cert)
        assert_allclose(back.A, t.A, atol=1e-8)
        assert_allclose(back.Atilde, t.Atilde, atol=1e-8)
        assert_allclose(back.b, t.b, atol=1e-8)
        assert_allclose(back.btilde, t.btilde, atol=1e-8)

    def test_zero_always_feasible(self):
        result = rk_feasible_at(catalog_method("ssprk33"), 0.0)
        self.assertTrue(result.feasible)
        assert_allclose(result.certificate.v, 1.0)

    def test_negative_r_rejected(self):
        with self.assertRaises(DwsspValidationError):
            rk_feasible_at(catalog_method("ssprk22"), -1.0)


class TestSspCoefficients(unittest.TestCase):

    def test_family_coefficient_equals_r(self):
        for r in (4.0, 8.0, 20.0, 100.0):
            self.assertAlmostEqual(rk_downwind_ssp_coefficient(family_tableau(r)), r, delta=1e-6)

    def test_explicit_catalog(self):
        expected = {"forward-euler": 1.0, "ssprk22": 1.0, "ssprk33": 1.0}
        for name, value in expected.items():
            t = catalog_method(name)
            c = rk_downwind_ssp_coefficient(t)
            self.assertAlmostEqual(c, value, delta=1e-6, msg=name)
            self.assertLessEqual(c, t.s + 1e-6)

    def test_trapezoidal(self):
        self.assertAlmostEqual(rk_downwind_ssp_coefficient(catalog_method("trapezoidal")), 2.0, delta=1e-6)

    def test_backward_euler_unbounded(self):
        with self.assertRaises(UnboundedCoefficientError) as ctx:
            rk_downwind_ssp_coefficient(catalog_method("backward-euler"))
        self.assertGreater(ctx.exception.cap, 1e5)

    def test_underlying_family_is_not_ssp(self):
        self.assertLess(rk_ssp_coefficient(family_tableau(8)), 1e-6)
        self.assertAlmostEqual(rk_ssp_coefficient(catalog_method("trapezoidal")), 2.0, delta=1e-6)

    def test_report(self):
        report = certification_report(family_tableau(8))
        self.assertAlmostEqual(report["Ctilde"], 8.0, delta=1e-6)
        self.assertTrue(report["feasible"])
        self.assertTrue(report["certificate_valid"])
        self.assertLessEqual(report["r_queried"], report["Ctilde"])

    def test_report_unbounded(self):
        report = certification_report(catalog_method("backward-euler"))
        self.assertEqual(report["Ctilde"], math.inf)


class TestBisection(unittest.TestCase):

    def test_threshold_found(self):
        value = bisect_feasibility(lambda r: r <= 3.7, 1e-9, "threshold")
        self.assertAlmostEqual(value, 3.7, delta=1e-8)
        self.assertLessEqual(value, 3.7)

    def test_infeasible_at_zero(self):
        with self.assertRaises(CertificationError):
            bisect_feasibility(lambda r: False, 1e-8, "never")

    def test_non_monotone_pattern(self):
        with self.assertRaises(CertificationError):
            bisect_feasibility(lambda r: r == 0.0 or 2.0 <= r <= 3.0 or r <= 0.5 and r > 0.3,
                               1e-6, "holes")

    def test_unbounded(self):
        with self.assertRaises(UnboundedCoefficientError):
            bisect_feasibility(lambda r: True, 1e-8, "always", cap=64.0)

    def test_tolerance_must_be_positive(self):
        with self.assertRaises(DwsspValidationError):
            bisect_feasibility(lambda r: True, 0.0, "bad")


# ---------------------------------------------------------------------------
# Gamma expansion
# ---------------------------------------------------------------------------

class TestGamma(unittest.TestCase):

    def test_stage_bound_equals_coefficient(self):
        for name in ("forward-euler", "ssprk22", "ssprk33"):
            t = catalog_method(name)
            c = rk_downwind_ssp_coefficient(t)
            cert = rk_feasible_at(t, c).certificate
            g = amplification_gamma(cert)
            self.assertAlmostEqual(verify_stage_bound(g), c, delta=1e-8, msg=name)
            self.assertAlmostEqual(g.total(), 1.0, delta=1e-10)

    def test_expansion_reproduces_stability_polynomial(self):
        cert = rk_feasible_at(catalog_method("ssprk22"), 1.0).certificate
        g = amplification_gamma(cert)
        z = -0.3
        self.assertAlmostEqual(g.evaluate(z, -z).real, 1.0 + z + z * z / 2.0, places=10)

    def test_implicit_representation_rejected(self):
        with self.assertRaises(NotExplicitError):
            amplification_gamma(make_optimal_family(8))


# ---------------------------------------------------------------------------
# Linear multistep methods
# ---------------------------------------------------------------------------

class TestLmmCoefficient(unittest.TestCase):

    def test_catalog_values(self):
        self.assertAlmostEqual(lmm_downwind_ssp_coefficient(catalog_method("lmm:forward-euler")), 1.0)
        self.assertAlmostEqual(lmm_downwind_ssp_coefficient(catalog_method("lmm:trapezoidal")), 2.0)
        self.assertEqual(lmm_downwind_ssp_coefficient(catalog_method("lmm:backward-euler")), math.inf)

    def test_negative_coefficients_give_zero(self):
        ab2 = DownwindLmm(alpha=[0.0, 1.0], beta=[-0.5, 1.5, 0.0], betatilde=[0.0, 0.0, 0.0])
        self.assertEqual(lmm_downwind_ssp_coefficient(ab2), 0.0)

    def test_downwind_weights_count(self):
        m = DownwindLmm(alpha=[1.0], beta=[0.25, 0.5], betatilde=[0.25, 0.0])
        self.assertAlmostEqual(lmm_downwind_ssp_coefficient(m), 2.0)

    def test_lemma_reduction(self):
        m = DownwindLmm(alpha=[1.0], beta=[1.0, 0.5], betatilde=[0.25, 0.0])
        reduced = lemma_reduction(m)
        assert_allclose(reduced.beta, [0.75, 0.5])
        assert_allclose(reduced.betatilde, [0.0, 0.0])
        assert_allclose(lmm_order_residuals(reduced, 1), lmm_order_residuals(m, 1))
        self.assertGreaterEqual(lmm_downwind_ssp_coefficient(reduced), lmm_downwind_ssp_coefficient(m))


class TestOptimalLmm(unittest.TestCase):

    def test_implicit_second_order_bound(self):
        values = []
        for k in range(1, 7):
            method, r_opt = optimal_lmm(k, 2, implicit=True)
            self.assertLessEqual(r_opt, 2.0 + 1e-6, msg=f"k={k}")
            assert_allclose(lmm_order_residuals(method, 2), 0.0, atol=1e-7)
            self.assertGreaterEqual(lmm_downwind_ssp_coefficient(method), r_opt - 1e-6)
            values.append(r_opt)
        self.assertAlmostEqual(values[0], 2.0, delta=1e-5)
        for a, b in zip(values, values[1:]):
            self.assertGreaterEqual(b, a - 1e-6)

    def test_explicit_method_is_explicit(self):
        method, r_opt = optimal_lmm(3, 2, implicit=False)
        self.assertTrue(method.is_explicit)
        self.assertGreater(r_opt, 0.0)
        self.assertTrue(np.isfinite(r_opt))

    def test_explicit_second_order_bound(self):
        method, r_opt = optimal_lmm(2, 2, implicit=False)
        self.assertTrue(method.is_explicit)
        self.assertLessEqual(r_opt, 1.0 + 1e-6)
        assert_allclose(lmm_order_residuals(method, 2), 0.0, atol=1e-7)
        self.assertGreaterEqual(lmm_downwind_ssp_coefficient(method), r_opt - 1e-6)

    def test_order_too_high(self):
        with self.assertRaises(DwsspValidationError):
            optimal_lmm(1, 2, implicit=False)

    def test_first_order_implicit_is_unbounded(self):
        method, r_opt = optimal_lmm(1, 1, implicit=True)
        self.assertEqual(r_opt, math.inf)
        assert_allclose(lmm_order_residuals(method, 1), 0.0, atol=1e-6)


if __name__ == "__main__":
    unittest.main()
