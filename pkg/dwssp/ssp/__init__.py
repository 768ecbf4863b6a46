"""
SSP certification: LP feasibility, bisection, optimal multistep methods.
"""
from .certify import (FeasibilityResult, bisect_feasibility, certification_report,
                      rk_downwind_ssp_coefficient, rk_feasible_at, rk_ssp_coefficient)
from .gamma import GammaExpansion, amplification_gamma, verify_stage_bound
from .lmm import lemma_reduction, lmm_downwind_ssp_coefficient, optimal_lmm
from .simplex import LinearProgram, LpResult, lp_feasible, lp_solve

__all__ = [
    "FeasibilityResult", "rk_feasible_at", "rk_downwind_ssp_coefficient", "rk_ssp_coefficient",
    "bisect_feasibility", "certification_report",
    "GammaExpansion", "amplification_gamma", "verify_stage_bound",
    "lmm_downwind_ssp_coefficient", "lemma_reduction", "optimal_lmm",
    "LinearProgram", "LpResult", "lp_feasible", "lp_solve",
]
