"""
Order-condition residuals.

Runge-Kutta conditions are evaluated on the underlying method, so a downwind
method has order ``p`` when its ``Ftilde = -F`` reduction does.
"""
import numpy as np

from ..config import MAX_ORDER_CONDITIONS
from ..exceptions import DwsspValidationError, UnsupportedOrderError
from .family import underlying_method
from .tableau import DownwindLmm, DownwindTableau


def rk_order_residuals(t: DownwindTableau, p: int) -> np.ndarray:
    """Residuals of the classical conditions up to order ``p`` (at most 3).

    Order: ``sum b - 1``, ``b.c - 1/2``, ``b.c^2 - 1/3``, ``b.A c - 1/6``.
    """
    p = int(p)
    if p < 1:
        raise DwsspValidationError(f"order must be at least 1, got {p}")
    if p > MAX_ORDER_CONDITIONS:
        raise UnsupportedOrderError(
            f"order conditions are available up to order {MAX_ORDER_CONDITIONS}, requested {p}"
        )
    u = underlying_method(t)
    A, b, c = u.A, u.b, u.c
    residuals = [b.sum() - 1.0]
    if p >= 2:
        residuals.append(b @ c - 0.5)
    if p >= 3:
        residuals.append(b @ (c * c) - 1.0 / 3.0)
        residuals.append(b @ (A @ c) - 1.0 / 6.0)
    return np.array(residuals)


def rk_order(t: DownwindTableau, tol: float = 1e-12) -> int:
    """Largest p <= 3 whose residuals all vanish within *tol* (0 if inconsistent)."""
    residuals = rk_order_residuals(t, MAX_ORDER_CONDITIONS)
    order = 0
    for p, n_conditions in ((1, 1), (2, 2), (3, 4)):
        if np.all(np.abs(residuals[:n_conditions]) <= tol):
            order = p
        else:
            break
    return order


def lmm_condition_matrix(k: int, p: int):
    """Coefficient rows of the LMM order conditions ``i = 0..p``.

    Returns ``(Ja, Jb, rhs)`` with row ``i`` of ``Ja`` holding ``j**i`` for
    ``j < k`` and row ``i`` of ``Jb`` holding ``i * j**(i-1)`` for ``j <= k``
    (``0**0 = 1``; the ``i = 0`` row of ``Jb`` is zero), and ``rhs[i] = k**i``.
    """
    if k < 1:
        raise DwsspValidationError(f"step count must be at least 1, got {k}")
    if p < 0:
        raise DwsspValidationError(f"order must be nonnegative, got {p}")
    i = np.arange(p + 1, dtype=float)[:, None]
    ja = np.arange(k, dtype=float)[None, :]
    jb = np.arange(k + 1, dtype=float)[None, :]
    Ja = np.power(ja, i)
    Jb = np.zeros((p + 1, k + 1))
    Jb[1:] = i[1:] * np.power(jb, i[1:] - 1.0)
    rhs = np.power(float(k), i[:, 0])
    return Ja, Jb, rhs


def lmm_order_residuals(m: DownwindLmm, p: int) -> np.ndarray:
    """Entry i: ``sum alpha_j j^i + sum (beta_j - betatilde_j) i j^(i-1) - k^i``."""
    Ja, Jb, rhs = lmm_condition_matrix(m.k, int(p))
    return Ja @ m.alpha + Jb @ (m.beta - m.betatilde) - rhs
