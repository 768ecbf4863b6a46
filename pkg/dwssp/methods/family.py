"""
The optimal two-stage implicit downwind family and conversions between the
convex-combination (Shu-Osher) form and Butcher form.
"""
import logging

import numpy as np
import scipy.linalg

from ..config import FAMILY_MIN_R, SINGULAR_RTOL
from ..exceptions import DwsspValidationError, SingularMatrixError
from .tableau import DownwindTableau, ShuOsherRep

logger = logging.getLogger(__name__)


def make_optimal_family(r: float) -> ShuOsherRep:
    """Second-order two-stage downwind method with downwind SSP coefficient ``r``.

    Valid for ``r > 2 + sqrt(2)``; at the boundary the downwind weight of the
    first stage vanishes and below it turns negative.
    """
    r = float(r)
    if not np.isfinite(r) or r <= FAMILY_MIN_R:
        raise DwsspValidationError(
            f"the downwind family requires r > 2 + sqrt(2) ~ {FAMILY_MIN_R:.6f}, got {r}"
        )
    denom = r * (r - 2.0)
    v = [2.0 / denom, 0.0, 0.0]
    P = [[2.0 / r, 0.0],
         [1.0, 0.0],
         [0.0, 1.0]]
    Ptilde = [[0.0, (r * r - 4.0 * r + 2.0) / denom],
              [0.0, 0.0],
              [0.0, 0.0]]
    return ShuOsherRep(r=r, v=v, P=P, Ptilde=Ptilde)


def check_invertible(M: np.ndarray, what: str) -> None:
    """Raise SingularMatrixError when sigma_min < SINGULAR_RTOL * sigma_max."""
    sigma = scipy.linalg.svdvals(M)
    if sigma[0] == 0.0 or sigma[-1] < SINGULAR_RTOL * sigma[0]:
        raise SingularMatrixError(
            f"{what} is singular to working precision "
            f"(sigma_min={sigma[-1]:.3e}, sigma_max={sigma[0]:.3e})"
        )


def shu_osher_to_butcher(rep: ShuOsherRep) -> DownwindTableau:
    """Eliminate the stage couplings of *rep* and return its Butcher tableau."""
    if rep.r <= 0.0:
        raise DwsspValidationError(f"conversion needs r > 0, got {rep.r}")
    s, r = rep.s, rep.r
    P_st, Pt_st = rep.P[:s], rep.Ptilde[:s]
    M = np.eye(s) - P_st - Pt_st
    check_invertible(M, "I - P' - Ptilde'")
    # M K = [P' | Ptilde'] / r, both blocks in one solve
    rhs = np.hstack([P_st, Pt_st]) / r
    sol = np.linalg.solve(M, rhs)
    A, Atilde = sol[:, :s], sol[:, s:]

    p_out, pt_out = rep.P[s], rep.Ptilde[s]
    q = p_out + pt_out
    b = p_out / r + q @ A
    btilde = pt_out / r + q @ Atilde
    c = (A - Atilde).sum(axis=1)
    logger.debug(f"Converted Shu-Osher form (s={s}, r={r}) to Butcher form")
    return DownwindTableau(A=A, Atilde=Atilde, b=b, btilde=btilde, c=c)


def underlying_method(t: DownwindTableau) -> DownwindTableau:
    """The ordinary method obtained by substituting ``Ftilde = -F``."""
    return DownwindTableau(
        A=t.A - t.Atilde,
        Atilde=np.zeros_like(t.Atilde),
        b=t.b - t.btilde,
        btilde=np.zeros_like(t.btilde),
        c=t.c,
        name=f"underlying({t.name})" if t.name else "",
    )


def is_stiffly_accurate(t: DownwindTableau) -> bool:
    return bool(np.array_equal(t.b, t.A[-1]) and np.array_equal(t.btilde, t.Atilde[-1]))


def downwind_weight(t: DownwindTableau) -> float:
    """Sum of ``btilde``: the weight of ``dt (L - Ltilde)`` in the one-step map."""
    return float(t.btilde.sum())
