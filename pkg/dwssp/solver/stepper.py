"""
Single steps of downwind Runge-Kutta and linear multistep methods.

Implicit stages are solved monolithically: on linear problems the stacked
``(s n) x (s n)`` system is assembled and LU-factored (cached per step size),
otherwise the stacked stage residual goes to Newton-Krylov, preconditioned
with a Jacobian whose sparsity follows the operator stencils.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from ..exceptions import DwsspValidationError, HistoryLengthError, SingularMatrixError
from ..methods.family import is_stiffly_accurate
from ..methods.tableau import DownwindLmm, DownwindTableau
from ..spatial.grid import GridFunction
from ..spatial.semidiscretization import SemiDiscretization
from .newton import newton_krylov_solve
from .settings import StepContext, StepStats

logger = logging.getLogger(__name__)

HistoryEntry = Tuple[GridFunction, GridFunction, GridFunction]


def _stage_matrix(dt: float, A: np.ndarray, Atilde: np.ndarray, semi: SemiDiscretization) -> np.ndarray:
    """``I - dt kron(A, M) - dt kron(Atilde, Mtilde)``."""
    size = A.shape[0] * semi.n
    return np.eye(size) - dt * np.kron(A, semi.M) - dt * np.kron(Atilde, semi.Mtilde)


def _factor(ctx: StepContext, key: str, dt: float, A: np.ndarray, Atilde: np.ndarray):
    cache_key = (key, float(dt))
    lu = ctx._lu_cache.get(cache_key)
    if lu is None:
        matrix = _stage_matrix(dt, A, Atilde, ctx.semi)
        lu = scipy.linalg.lu_factor(matrix, check_finite=True)
        if np.any(np.diag(lu[0]) == 0.0):
            raise SingularMatrixError(f"stage system for dt={dt:g} is singular")
        ctx._lu_cache[cache_key] = lu
        logger.debug(f"Factored {key} stage system of size {matrix.shape[0]} for dt={dt:g}")
    return lu


def _combine(base: np.ndarray, dt: float, weights: np.ndarray, values: Sequence[np.ndarray]) -> np.ndarray:
    out = base.copy()
    for w, v in zip(weights, values):
        if w != 0.0:
            out += dt * w * v
    return out


# ---------------------------------------------------------------------------
# Runge-Kutta
# ---------------------------------------------------------------------------

def _explicit_stages(t: DownwindTableau, semi: SemiDiscretization, u: np.ndarray, dt: float):
    s = t.s
    F: List[Optional[np.ndarray]] = [None] * s
    Ft: List[Optional[np.ndarray]] = [None] * s
    Y = []
    for i in range(s):
        y = u.copy()
        for j in range(i):
            if t.A[i, j] != 0.0:
                y += dt * t.A[i, j] * F[j]
            if t.Atilde[i, j] != 0.0:
                y += dt * t.Atilde[i, j] * Ft[j]
        Y.append(y)
        needs_F = np.any(t.A[i + 1:, i] != 0.0) or t.b[i] != 0.0
        needs_Ft = np.any(t.Atilde[i + 1:, i] != 0.0) or t.btilde[i] != 0.0
        F[i] = semi.F_values(y) if needs_F else None
        Ft[i] = semi.Ftilde_values(y) if needs_Ft else None
    return Y, F, Ft


def _stage_residual(t: DownwindTableau, semi: SemiDiscretization, u: np.ndarray, dt: float):
    s, n = t.s, semi.n

    def residual(z: np.ndarray) -> np.ndarray:
        Y = z.reshape(s, n)
        F = np.stack([semi.F_values(y) for y in Y])
        Ft = np.stack([semi.Ftilde_values(y) for y in Y])
        return (Y - u[None, :] - dt * (t.A @ F) - dt * (t.Atilde @ Ft)).ravel()

    return residual


def rk_step_values(ctx: StepContext, u: np.ndarray, dt: Optional[float] = None) -> Tuple[np.ndarray, StepStats]:
    """Advance raw values *u* by one step of the tableau in *ctx*."""
    t = ctx.method
    if not isinstance(t, DownwindTableau):
        raise DwsspValidationError("rk_step needs a DownwindTableau")
    dt = ctx.dt if dt is None else float(dt)
    if dt < 0.0:
        raise DwsspValidationError(f"time step must be nonnegative, got {dt}")
    u = np.asarray(u, dtype=float)
    if dt == 0.0:
        return u.copy(), StepStats()
    semi, s, n = ctx.semi, t.s, ctx.semi.n

    if t.is_explicit:
        Y, F, Ft = _explicit_stages(t, semi, u, dt)
        stats = StepStats()
    elif ctx.uses_assembled_matrices:
        lu = _factor(ctx, "rk", dt, t.A, t.Atilde)
        Y = list(scipy.linalg.lu_solve(lu, np.tile(u, s)).reshape(s, n))
        F = Ft = None
        stats = StepStats()
    else:
        sparsity = np.kron(np.ones((s, s), dtype=bool), semi.coupling_pattern())
        result = newton_krylov_solve(_stage_residual(t, semi, u, dt), np.tile(u, s), ctx.newton,
                                     sparsity=sparsity)
        Y = list(result.x.reshape(s, n))
        F = Ft = None
        stats = StepStats(result.iterations, result.residual)

    if is_stiffly_accurate(t):
        return Y[-1].copy(), stats
    if F is None:
        F = [semi.F_values(y) if t.b[j] != 0.0 else None for j, y in enumerate(Y)]
        Ft = [semi.Ftilde_values(y) if t.btilde[j] != 0.0 else None for j, y in enumerate(Y)]
    out = _combine(u, dt, t.b, F)
    return _combine(out, dt, t.btilde, Ft), stats


def rk_step(ctx: StepContext, u: GridFunction, dt: Optional[float] = None) -> GridFunction:
    """One Runge-Kutta step; *dt* overrides ``ctx.dt`` (zero is the identity)."""
    values, _ = rk_step_values(ctx, u.values, dt)
    return u.with_values(values)


def linear_step_operator(t: DownwindTableau, semi: SemiDiscretization, dt: float) -> np.ndarray:
    """Dense one-step matrix ``psi(dt L, dt Ltilde)`` of a linear semi-discretization."""
    if not semi.linear:
        raise DwsspValidationError("one-step matrices exist only for linear semi-discretizations")
    s, n = t.s, semi.n
    stacked = np.tile(np.eye(n), (s, 1))
    Z = scipy.linalg.solve(_stage_matrix(dt, t.A, t.Atilde, semi), stacked).reshape(s, n, n)
    if is_stiffly_accurate(t):
        return Z[-1]
    out = np.eye(n)
    for j in range(s):
        out += dt * (t.b[j] * semi.M + t.btilde[j] * semi.Mtilde) @ Z[j]
    return out


# ---------------------------------------------------------------------------
# Linear multistep
# ---------------------------------------------------------------------------

def history_entry(semi: SemiDiscretization, u: GridFunction) -> HistoryEntry:
    return (u, semi.apply_F(u), semi.apply_Ftilde(u))


def lmm_step_values(ctx: StepContext, history: Sequence[Tuple[np.ndarray, np.ndarray, np.ndarray]],
                    dt: Optional[float] = None) -> Tuple[np.ndarray, StepStats]:
    m = ctx.method
    if not isinstance(m, DownwindLmm):
        raise DwsspValidationError("lmm_step needs a DownwindLmm")
    if len(history) != m.k:
        raise HistoryLengthError(f"a {m.k}-step method needs {m.k} history entries, got {len(history)}")
    dt = ctx.dt if dt is None else float(dt)
    semi = ctx.semi

    rhs = None
    for j, (u_j, F_j, Ft_j) in enumerate(history):
        term = None
        if m.alpha[j] != 0.0:
            term = m.alpha[j] * np.asarray(u_j, dtype=float)
        for coef, values in ((m.beta[j], F_j), (m.betatilde[j], Ft_j)):
            if coef != 0.0:
                piece = dt * coef * np.asarray(values, dtype=float)
                term = piece if term is None else term + piece
        if term is not None:
            rhs = term if rhs is None else rhs + term
    if rhs is None:
        rhs = np.zeros(semi.n)

    if m.is_explicit:
        return rhs, StepStats()
    bk = np.array([[m.beta[-1]]])
    btk = np.array([[m.betatilde[-1]]])
    if ctx.uses_assembled_matrices:
        lu = _factor(ctx, "lmm", dt, bk, btk)
        return scipy.linalg.lu_solve(lu, rhs), StepStats()

    def residual(x: np.ndarray) -> np.ndarray:
        out = x - rhs
        if m.beta[-1] != 0.0:
            out = out - dt * m.beta[-1] * semi.F_values(x)
        if m.betatilde[-1] != 0.0:
            out = out - dt * m.betatilde[-1] * semi.Ftilde_values(x)
        return out

    result = newton_krylov_solve(residual, np.asarray(history[-1][0], dtype=float), ctx.newton,
                                 sparsity=semi.coupling_pattern())
    return result.x, StepStats(result.iterations, result.residual)


def lmm_step(ctx: StepContext, history: Sequence[HistoryEntry], dt: Optional[float] = None) -> GridFunction:
    """One multistep update from ``k`` entries ``(u, F(u), Ftilde(u))``, oldest first."""
    raw = [(u.values, F.values, Ft.values) for u, F, Ft in history]
    values, _ = lmm_step_values(ctx, raw, dt)
    return history[-1][0].with_values(values) if history else GridFunction(ctx.semi.grid, values)
