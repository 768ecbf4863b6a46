"""
Certificates of the downwind SSP property for Runge-Kutta methods.

A tableau has downwind SSP coefficient at least ``r`` iff it can be written
as a convex combination of forward-Euler steps of size ``dt/r``. For fixed
``r`` that representation is linear in ``(v, P, Ptilde)``; every row is
solved as its own small LP:

    p_i + r (p_i + pt_i) A      = r a_i
    pt_i + r (p_i + pt_i) Atilde = r at_i
    v_i + sum(p_i + pt_i)        = 1,      all entries >= 0

with ``(a_i, at_i)`` the rows of ``(A, Atilde)`` and, for the update row,
``(b, btilde)``.
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..config import (CERTIFICATE_NEGATIVE_TOL, DEFAULT_BISECTION_TOL,
                      LP_FEASIBILITY_TOL, SSP_BRACKET_CAP)
from ..exceptions import (CertificationError, DwsspValidationError,
                          UnboundedCoefficientError)
from ..methods.family import underlying_method
from ..methods.tableau import DownwindTableau, ShuOsherRep
from .simplex import LinearProgram, lp_feasible

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    r: float
    certificate: Optional[ShuOsherRep] = None
    max_violation: float = 0.0

    def to_dict(self) -> dict:
        return {
            "r_queried": self.r,
            "feasible": self.feasible,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "max_violation": self.max_violation,
        }


def _row_program(t: DownwindTableau, r: float, a_row: np.ndarray, at_row: np.ndarray) -> LinearProgram:
    s = t.s
    # variables: p (s), pt (s), v (1); columns of G are the matched entries of (a, at)
    G = np.vstack([np.hstack([t.A, t.Atilde]), np.hstack([t.A, t.Atilde])])
    stage = np.hstack([(np.eye(2 * s) + r * G).T, np.zeros((2 * s, 1))])
    consistency = np.hstack([np.ones(2 * s), [1.0]])[None, :]
    A_eq = np.vstack([stage, consistency])
    b_eq = np.hstack([r * a_row, r * at_row, [1.0]])
    return LinearProgram(A_eq=A_eq, b_eq=b_eq)


def rk_feasible_at(t: DownwindTableau, r: float) -> FeasibilityResult:
    """Search for a nonnegative convex-combination form of *t* at parameter *r*."""
    r = float(r)
    if not np.isfinite(r) or r < 0.0:
        raise DwsspValidationError(f"r must be finite and nonnegative, got {r}")
    s = t.s
    rows_a = np.vstack([t.A, t.b[None, :]])
    rows_at = np.vstack([t.Atilde, t.btilde[None, :]])
    v = np.zeros(s + 1)
    P = np.zeros((s + 1, s))
    Ptilde = np.zeros((s + 1, s))
    worst = 0.0
    for i in range(s + 1):
        result = lp_feasible(_row_program(t, r, rows_a[i], rows_at[i]))
        if not result.feasible:
            logger.debug(f"No certificate at r={r}: row {i + 1} infeasible")
            return FeasibilityResult(feasible=False, r=r, max_violation=result.max_violation)
        x = result.x
        worst = max(worst, result.max_violation)
        P[i] = np.where(x[:s] < 0.0, 0.0, x[:s])
        Ptilde[i] = np.where(x[s:2 * s] < 0.0, 0.0, x[s:2 * s])
        v[i] = 1.0 - P[i].sum() - Ptilde[i].sum()
    certificate = ShuOsherRep(r=r, v=v, P=P, Ptilde=Ptilde)
    return FeasibilityResult(feasible=True, r=r, certificate=certificate, max_violation=worst)


# ---------------------------------------------------------------------------
# Bisection
# ---------------------------------------------------------------------------

def bisect_feasibility(feasible: Callable[[float], bool], tol: float, label: str,
                       cap: float = SSP_BRACKET_CAP) -> float:
    """Largest ``r`` with ``feasible(r)``, to within *tol*.

    The bracket doubles from 1 until infeasible. The returned value is the
    feasible end of the final bracket; three interior points are re-checked.

    Raises:
        UnboundedCoefficientError: If still feasible at *cap*.
        CertificationError: If the feasibility pattern is not monotone.
    """
    if not tol > 0.0:
        raise DwsspValidationError(f"tolerance must be positive, got {tol}")
    if not feasible(0.0):
        raise CertificationError(f"{label}: no certificate even at r=0")
    lo, hi = 0.0, 1.0
    while feasible(hi):
        lo = hi
        if hi >= cap:
            raise UnboundedCoefficientError(
                f"{label}: still feasible at the bracket cap r={cap:g} (effectively unbounded)",
                cap=cap,
            )
        hi = min(2.0 * hi, cap)
    steps = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
        steps += 1
    for frac in (0.25, 0.5, 0.75):
        probe = frac * lo
        if not feasible(probe):
            raise CertificationError(
                f"{label}: infeasible at r={probe:g} below the bisection result {lo:g}"
            )
    logger.debug(f"{label}: bisection settled at {lo:.12g} after {steps} steps (tol={tol:g})")
    return lo


def rk_downwind_ssp_coefficient(t: DownwindTableau, tol: float = DEFAULT_BISECTION_TOL) -> float:
    """Downwind SSP coefficient of *t*, within *tol*."""
    label = t.name or f"{t.s}-stage method"
    value = bisect_feasibility(lambda r: rk_feasible_at(t, r).feasible, tol, label)
    logger.info(f"Downwind SSP coefficient of {label}: {value:.10g}")
    return value


def rk_ssp_coefficient(t: DownwindTableau, tol: float = DEFAULT_BISECTION_TOL) -> float:
    """Classical SSP coefficient, i.e. that of the underlying method."""
    return rk_downwind_ssp_coefficient(underlying_method(t), tol)


def certification_report(t: DownwindTableau, tol: float = DEFAULT_BISECTION_TOL,
                         method: str = "") -> dict:
    """``{"method", "r_queried", "feasible", "certificate", "Ctilde", "tolerance"}``.

    The certificate is computed at ``Ctilde - tol``; an unbounded method is
    reported with ``Ctilde = inf`` and the certificate at the bracket cap.
    """
    try:
        ctilde = rk_downwind_ssp_coefficient(t, tol)
        r_query = max(0.0, ctilde - tol)
    except UnboundedCoefficientError as exc:
        ctilde = math.inf
        r_query = exc.cap
    result = rk_feasible_at(t, r_query)
    report = {"method": method or t.name, "Ctilde": ctilde, "tolerance": tol}
    report.update(result.to_dict())
    if result.certificate is not None:
        report["certificate_min_entry"] = result.certificate.min_entry()
        report["certificate_valid"] = result.certificate.is_certificate(
            max(CERTIFICATE_NEGATIVE_TOL, LP_FEASIBILITY_TOL))
    return report
