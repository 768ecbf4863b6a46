"""
Downwind Runge-Kutta and linear multistep methods.
"""
from .catalog import (BUILTIN_NAMES, catalog_method, family_tableau, load_method,
                      method_from_dict, method_to_json, resolve_method)
from .family import (downwind_weight, is_stiffly_accurate, make_optimal_family,
                     shu_osher_to_butcher, underlying_method)
from .order import lmm_order_residuals, rk_order, rk_order_residuals
from .report import lmm_report, method_report, rk_report
from .stability import (RationalStabilityFunction, a_stability_sample, evaluate_psi,
                        psi_at_infinity, stability_function)
from .tableau import DownwindLmm, DownwindTableau, ShuOsherRep

__all__ = [
    "DownwindTableau", "ShuOsherRep", "DownwindLmm", "RationalStabilityFunction",
    "make_optimal_family", "shu_osher_to_butcher", "underlying_method",
    "is_stiffly_accurate", "downwind_weight",
    "rk_order_residuals", "rk_order", "lmm_order_residuals",
    "stability_function", "evaluate_psi", "psi_at_infinity", "a_stability_sample",
    "catalog_method", "family_tableau", "resolve_method", "load_method",
    "method_from_dict", "method_to_json", "BUILTIN_NAMES",
    "method_report", "rk_report", "lmm_report",
]
