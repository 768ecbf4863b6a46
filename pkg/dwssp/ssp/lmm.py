"""
Downwind SSP coefficients of linear multistep methods and the LP search for
optimal methods.
"""
import logging
import math
from typing import Tuple

import numpy as np

from ..config import DEFAULT_BISECTION_TOL, LP_FEASIBILITY_TOL
from ..exceptions import (DwsspValidationError, InfeasibleOrderError,
                          UnboundedCoefficientError)
from ..methods.order import lmm_condition_matrix
from ..methods.tableau import DownwindLmm
from .certify import bisect_feasibility
from .simplex import LinearProgram, lp_feasible, lp_solve

logger = logging.getLogger(__name__)


def lmm_downwind_ssp_coefficient(m: DownwindLmm) -> float:
    """``min_j alpha_j / (beta_j + betatilde_j)`` over ``j < k``.

    A zero denominator imposes no bound (``inf``). Negative ``alpha_j`` or
    negative explicit-part ``beta_j``/``betatilde_j`` give 0.
    """
    k = m.k
    alpha, beta, betatilde = m.alpha, m.beta[:k], m.betatilde[:k]
    if np.any(alpha < 0.0) or np.any(beta < 0.0) or np.any(betatilde < 0.0):
        return 0.0
    best = math.inf
    for a, weight in zip(alpha, beta + betatilde):
        if weight > 0.0:
            best = min(best, a / weight)
    return float(best)


def lemma_reduction(m: DownwindLmm) -> DownwindLmm:
    """Remove the common part of each ``(beta_j, betatilde_j)`` pair.

    Order conditions only see ``beta_j - betatilde_j``, so they are
    unchanged, and the SSP ratios can only grow.
    """
    common = np.minimum(m.beta, m.betatilde)
    common = np.where(common > 0.0, common, 0.0)
    return DownwindLmm(alpha=m.alpha, beta=m.beta - common, betatilde=m.betatilde - common,
                       name=m.name)


class _LmmProgram:
    """Variables ``[delta (k), beta (n_b), betatilde (n_b)]`` with ``n_b = k+1`` (implicit) or ``k``."""

    def __init__(self, k: int, p: int, implicit: bool):
        self.k, self.p, self.implicit = k, p, implicit
        self.n_b = k + 1 if implicit else k
        self.Ja, Jb, self.rhs = lmm_condition_matrix(k, p)
        self.Jb = Jb[:, :self.n_b]

    def _Ja_b(self) -> np.ndarray:
        Ja_b = np.zeros((self.p + 1, self.n_b))
        Ja_b[:, :self.k] = self.Ja
        return Ja_b

    def program(self, r: float, objective: bool = False) -> LinearProgram:
        Ja_b = self._Ja_b()
        A_eq = np.hstack([self.Ja, r * Ja_b + self.Jb, r * Ja_b - self.Jb])
        c = None
        if objective:
            c = np.hstack([np.zeros(self.k + self.n_b), np.ones(self.n_b)])
        return LinearProgram(A_eq=A_eq, b_eq=self.rhs, objective=c)

    def method(self, x: np.ndarray, r: float) -> DownwindLmm:
        x = np.where(x < 0.0, 0.0, x)
        k, n_b = self.k, self.n_b
        delta, beta_v, betatilde_v = x[:k], x[k:k + n_b], x[k + n_b:]
        beta = np.zeros(k + 1)
        betatilde = np.zeros(k + 1)
        beta[:n_b] = beta_v
        betatilde[:n_b] = betatilde_v
        alpha = delta + r * (beta[:k] + betatilde[:k])
        kind = "implicit" if self.implicit else "explicit"
        return DownwindLmm(alpha=alpha, beta=beta, betatilde=betatilde,
                           name=f"optimal-{kind}-k{k}-p{self.p}")


def optimal_lmm(k: int, p: int, implicit: bool = True,
                tol: float = DEFAULT_BISECTION_TOL) -> Tuple[DownwindLmm, float]:
    """Method of at most *k* steps and order *p* with the largest downwind SSP coefficient.

    Returns the method and the optimum (``math.inf`` when the coefficient is
    unbounded up to the bracket cap). Among optimizers at the final ``r`` the
    one with the smallest ``sum(betatilde)`` is kept.

    Raises:
        InfeasibleOrderError: If no method of this order exists even at r=0.
    """
    k, p = int(k), int(p)
    if k < 1:
        raise DwsspValidationError(f"step count must be at least 1, got {k}")
    if p < 1:
        raise DwsspValidationError(f"order must be at least 1, got {p}")
    limit = k + 1 if implicit else k
    if p > limit:
        raise DwsspValidationError(
            f"a {'implicit' if implicit else 'explicit'} {k}-step method has order at most {limit}, got p={p}"
        )
    if not tol > 0.0:
        raise DwsspValidationError(f"tolerance must be positive, got {tol}")

    lp = _LmmProgram(k, p, implicit)
    label = f"optimal LMM (k={k}, p={p}, {'implicit' if implicit else 'explicit'})"
    if not lp_feasible(lp.program(0.0)).feasible:
        raise InfeasibleOrderError(f"{label}: no method satisfies the order conditions")

    try:
        r_opt = bisect_feasibility(lambda r: lp_feasible(lp.program(r)).feasible, tol, label)
        r_final = r_opt
    except UnboundedCoefficientError as exc:
        r_opt = math.inf
        r_final = exc.cap

    result = lp_solve(lp.program(r_final, objective=True))
    if not result.feasible or result.max_violation > math.sqrt(LP_FEASIBILITY_TOL):
        # the tie-break polish lost feasibility; fall back to the plain basic point
        result = lp_feasible(lp.program(r_final))
    method = lemma_reduction(lp.method(result.x, r_final))
    logger.info(f"{label}: Ctilde = {r_opt:.10g}")
    return method, r_opt
