"""
Inexact Newton iteration with restarted GMRES inner solves.

Jacobian-vector products are central finite differences of the residual,
unless a dense Jacobian is supplied (assembled mode), in which case each
Newton step is an LU solve. When the caller knows which unknowns each
residual entry depends on, GMRES is preconditioned with the LU factors of a
dense Jacobian built from grouped finite differences.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np
import scipy.linalg
from scipy.sparse.linalg import LinearOperator, gmres

from ..exceptions import ConvergenceError, DwsspValidationError
from .settings import JacobianMode, NewtonSettings

logger = logging.getLogger(__name__)

Residual = Callable[[np.ndarray], np.ndarray]

_FD_BASE = np.sqrt(np.finfo(float).eps)
_MIN_STEP = 2.0 ** -10
_ARMIJO = 1e-4


@dataclass
class NewtonResult:
    x: np.ndarray
    iterations: int
    residual_history: List[float] = field(default_factory=list)

    @property
    def residual(self) -> float:
        return self.residual_history[-1]


def fd_jacobian_operator(residual: Residual, x: np.ndarray, rx: np.ndarray) -> LinearOperator:
    """``J(x) v`` by central differences with step ``sqrt(eps) (1 + |x|) / |v|``."""
    scale = _FD_BASE * (1.0 + np.linalg.norm(x))

    def matvec(v):
        v = np.ravel(v)
        vnorm = np.linalg.norm(v)
        if vnorm == 0.0:
            return np.zeros_like(rx)
        h = scale / vnorm
        return (residual(x + h * v) - residual(x - h * v)) / (2.0 * h)

    n = x.shape[0]
    return LinearOperator((n, n), matvec=matvec, dtype=float)


def column_groups(sparsity: np.ndarray) -> List[np.ndarray]:
    """Greedy partition of columns into groups with pairwise disjoint row patterns.

    ``sparsity[i, j]`` is true when residual entry ``i`` depends on unknown
    ``j``. Columns of one group can be differenced with a single perturbation.
    """
    sparsity = np.asarray(sparsity, dtype=bool)
    if sparsity.ndim != 2 or sparsity.shape[0] != sparsity.shape[1]:
        raise DwsspValidationError(f"sparsity pattern must be square, got shape {sparsity.shape}")
    covered: List[np.ndarray] = []
    members: List[List[int]] = []
    for j in range(sparsity.shape[1]):
        rows = sparsity[:, j]
        for g, used in enumerate(covered):
            if not np.any(used & rows):
                used |= rows
                members[g].append(j)
                break
        else:
            covered.append(rows.copy())
            members.append([j])
    return [np.array(m, dtype=int) for m in members]


def grouped_fd_jacobian(residual: Residual, x: np.ndarray, sparsity: np.ndarray,
                        groups: Optional[List[np.ndarray]] = None) -> np.ndarray:
    """Dense Jacobian from two residual evaluations per column group."""
    sparsity = np.asarray(sparsity, dtype=bool)
    groups = column_groups(sparsity) if groups is None else groups
    h = _FD_BASE * (1.0 + np.abs(x))
    jac = np.zeros(sparsity.shape)
    for cols in groups:
        step = np.zeros_like(x)
        step[cols] = h[cols]
        diff = (residual(x + step) - residual(x - step)) / 2.0
        for j in cols:
            rows = sparsity[:, j]
            jac[rows, j] = diff[rows] / h[j]
    return jac


def _preconditioner(residual: Residual, x: np.ndarray, sparsity: np.ndarray,
                    groups: List[np.ndarray]) -> Optional[LinearOperator]:
    jac = grouped_fd_jacobian(residual, x, sparsity, groups)
    try:
        lu = scipy.linalg.lu_factor(jac, check_finite=True)
    except (ValueError, scipy.linalg.LinAlgError) as e:
        logger.warning(f"Grouped Jacobian could not be factored ({e}); GMRES runs unpreconditioned")
        return None
    if np.any(np.diag(lu[0]) == 0.0):
        logger.warning("Grouped Jacobian is singular; GMRES runs unpreconditioned")
        return None
    return LinearOperator(jac.shape, matvec=lambda v: scipy.linalg.lu_solve(lu, np.ravel(v)),
                          dtype=float)


def newton_krylov_solve(residual: Residual, guess: np.ndarray,
                        settings: Optional[NewtonSettings] = None,
                        jacobian: Optional[np.ndarray] = None,
                        sparsity: Optional[np.ndarray] = None) -> NewtonResult:
    """Solve ``residual(x) = 0`` starting from *guess*.

    Converged when ``|R(x)| <= abs_tol + rel_tol * |R(guess)|`` (2-norm).
    A backtracking line search halves the step until the residual norm
    decreases sufficiently. *sparsity* (``R_i`` depends on ``x_j``) enables
    the grouped-difference preconditioner for systems of at most
    ``settings.precondition_max_size`` unknowns; it is rebuilt every
    Newton iteration.

    Raises:
        ConvergenceError: After ``max_newton`` iterations without convergence,
            or as soon as the line search finds no step that reduces the residual.
    """
    settings = settings or NewtonSettings()
    x = np.array(guess, dtype=float).ravel()
    assembled = settings.jacobian_mode is JacobianMode.ASSEMBLED_LINEAR and jacobian is not None
    lu = None
    if assembled:
        jacobian = np.asarray(jacobian, dtype=float)
        if jacobian.shape != (x.size, x.size):
            raise DwsspValidationError(f"Jacobian must have shape {(x.size, x.size)}, got {jacobian.shape}")
        lu = scipy.linalg.lu_factor(jacobian)

    groups = None
    if lu is None and sparsity is not None:
        sparsity = np.asarray(sparsity, dtype=bool)
        if sparsity.shape != (x.size, x.size):
            raise DwsspValidationError(f"sparsity must have shape {(x.size, x.size)}, got {sparsity.shape}")
        if x.size <= settings.precondition_max_size:
            groups = column_groups(sparsity)
            logger.debug(f"Preconditioning {x.size} unknowns with {len(groups)} column groups")

    rx = residual(x)
    norm = float(np.linalg.norm(rx))
    history = [norm]
    target = settings.abs_tol + settings.rel_tol * norm
    if norm <= target:
        return NewtonResult(x=x, iterations=0, residual_history=history)

    for iteration in range(1, settings.max_newton + 1):
        if lu is not None:
            dx = scipy.linalg.lu_solve(lu, -rx)
        else:
            J = fd_jacobian_operator(residual, x, rx)
            M = _preconditioner(residual, x, sparsity, groups) if groups is not None else None
            dx, info = gmres(J, -rx, rtol=settings.krylov_tol, atol=0.0,
                             restart=settings.krylov_restart,
                             maxiter=settings.krylov_max_cycles, M=M)
            if info > 0:
                logger.warning(f"GMRES did not reach rtol={settings.krylov_tol:g} "
                               f"in {info} iterations (Newton iteration {iteration})")
            elif info < 0:
                logger.warning(f"GMRES reported breakdown ({info}) at Newton iteration {iteration}")

        step = 1.0
        while True:
            trial = x + step * dx
            r_trial = residual(trial)
            trial_norm = float(np.linalg.norm(r_trial))
            if trial_norm <= (1.0 - _ARMIJO * step) * norm:
                break
            step *= 0.5
            if step < _MIN_STEP:
                history.append(norm)
                logger.error(f"Newton line search stalled at iteration {iteration}; |R| = {norm:.3e}")
                raise ConvergenceError(
                    f"Newton line search found no decrease below step {_MIN_STEP:g} at iteration "
                    f"{iteration} (residual {norm:.3e}, target {target:.3e})",
                    iterations=iteration,
                    residual_history=history,
                )
        if step < 1.0:
            logger.debug(f"Newton iteration {iteration}: line search step {step:g}")
        x, rx, norm = trial, r_trial, trial_norm
        history.append(norm)
        logger.debug(f"Newton iteration {iteration}: |R| = {norm:.3e} (target {target:.3e})")
        if norm <= target:
            return NewtonResult(x=x, iterations=iteration, residual_history=history)

    logger.error(f"Newton failed after {settings.max_newton} iterations; |R| = {norm:.3e}")
    raise ConvergenceError(
        f"Newton iteration did not converge in {settings.max_newton} iterations "
        f"(final residual {norm:.3e}, target {target:.3e})",
        iterations=settings.max_newton,
        residual_history=history,
    )
