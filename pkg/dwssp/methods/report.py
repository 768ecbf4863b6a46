"""
Summaries of a method's order, linear stability and structure.
"""
import logging
from typing import Any, Dict, Union

import numpy as np

from ..config import MAX_ORDER_CONDITIONS, MAX_STABILITY_STAGES
from .family import downwind_weight, is_stiffly_accurate
from .order import lmm_order_residuals, rk_order, rk_order_residuals
from .stability import a_stability_sample, psi_at_infinity, stability_function
from .tableau import DownwindLmm, DownwindTableau

logger = logging.getLogger(__name__)

ORDER_TOL = 1e-10
A_STABILITY_SLACK = 1e-10


def rk_report(t: DownwindTableau) -> Dict[str, Any]:
    report: Dict[str, Any] = {
        "method": t.name,
        "kind": "runge-kutta",
        "stages": t.s,
        "explicit": t.is_explicit,
        "downwind": t.has_downwind,
        "stiffly_accurate": is_stiffly_accurate(t),
        "downwind_weight": downwind_weight(t),
        "order": rk_order(t, ORDER_TOL),
        "order_residuals": {
            str(p): rk_order_residuals(t, p).tolist() for p in range(1, MAX_ORDER_CONDITIONS + 1)
        },
    }
    if t.s > MAX_STABILITY_STAGES:
        logger.info(f"{t.name}: {t.s} stages, stability function not expanded")
        report["stability"] = None
        return report

    psi = stability_function(t).normalized()
    poles = psi.den.roots() if len(psi.denominator) > 1 else np.array([])
    boundary_max = a_stability_sample(psi)
    at_infinity = psi_at_infinity(psi)
    report["stability"] = {
        "psi": str(psi),
        "numerator": psi.to_dict()["numerator"],
        "denominator": psi.to_dict()["denominator"],
        "abs_psi_at_infinity": at_infinity,
        "max_abs_psi_imaginary_axis": boundary_max,
        "a_stable": bool(boundary_max <= 1.0 + A_STABILITY_SLACK
                         and at_infinity <= 1.0 + A_STABILITY_SLACK
                         and np.all(np.real(poles) > 0.0)),
    }
    return report


def lmm_report(m: DownwindLmm) -> Dict[str, Any]:
    from ..ssp.lmm import lmm_downwind_ssp_coefficient

    order = 0
    residuals = {}
    for p in range(1, m.k + 2):
        res = lmm_order_residuals(m, p)
        residuals[str(p)] = res.tolist()
        if order == p - 1 and np.all(np.abs(res) <= ORDER_TOL):
            order = p
    return {
        "method": m.name,
        "kind": "linear-multistep",
        "steps": m.k,
        "explicit": m.is_explicit,
        "downwind": bool(np.any(m.betatilde != 0.0)),
        "order": order,
        "order_residuals": residuals,
        "Ctilde": lmm_downwind_ssp_coefficient(m),
    }


def method_report(method: Union[DownwindTableau, DownwindLmm]) -> Dict[str, Any]:
    """Order, stability and structure of *method* as a JSON-ready dict."""
    if isinstance(method, DownwindLmm):
        return lmm_report(method)
    return rk_report(method)
