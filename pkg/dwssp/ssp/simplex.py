"""
Dense two-phase tableau simplex for ``{A x = b, x >= 0}``.

Problems here have at most a few dozen variables, so the tableau is kept as
one dense array and pivoted in place. Phase 1 minimizes the sum of one
artificial variable per row; phase 2 (optional) minimizes ``objective``
over the feasible set. Dantzig's rule is used until ``LP_BLAND_AFTER``
pivots, then Bland's rule; ``LP_MAX_PIVOTS`` trips the cycling guard.
"""
import logging
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import LP_BLAND_AFTER, LP_FEASIBILITY_TOL, LP_MAX_PIVOTS, LP_PIVOT_TOL
from ..exceptions import DwsspValidationError, LpCyclingError
from ..utils import Utils

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """``minimize objective . x  s.t.  A_eq x = b_eq, x >= 0``."""
    A_eq: np.ndarray
    b_eq: np.ndarray
    objective: Optional[np.ndarray] = None

    def __post_init__(self):
        try:
            A = Utils.readonly(self.A_eq, ndim=2, field="A_eq")
            b = Utils.readonly(self.b_eq, ndim=1, field="b_eq")
        except ValueError as exc:
            raise DwsspValidationError(str(exc)) from exc
        if A.shape[0] != b.shape[0]:
            raise DwsspValidationError(
                f"A_eq has {A.shape[0]} rows but b_eq has {b.shape[0]} entries"
            )
        object.__setattr__(self, "A_eq", A)
        object.__setattr__(self, "b_eq", b)
        c = np.zeros(A.shape[1]) if self.objective is None else self.objective
        try:
            c = Utils.readonly(c, ndim=1, field="objective")
        except ValueError as exc:
            raise DwsspValidationError(str(exc)) from exc
        if c.shape != (A.shape[1],):
            raise DwsspValidationError(f"objective must have length {A.shape[1]}")
        object.__setattr__(self, "objective", c)

    @property
    def n_vars(self) -> int:
        return self.A_eq.shape[1]

    @property
    def n_constraints(self) -> int:
        return self.A_eq.shape[0]


@dataclass
class LpResult:
    feasible: bool
    x: Optional[np.ndarray] = None
    artificial_objective: float = 0.0
    objective_value: float = float("nan")
    status: str = ""
    pivots: int = 0
    max_violation: float = 0.0
    bland_engaged: bool = field(default=False, repr=False)


class _Tableau:
    """Phase-1 tableau: constraint rows, objective row, pseudo-objective row."""

    def __init__(self, lp: LinearProgram):
        A = np.array(lp.A_eq, dtype=float)
        b = np.array(lp.b_eq, dtype=float)
        m, n = A.shape
        # row scaling keeps the feasibility threshold relative
        scale = np.abs(A).max(axis=1) if n else np.ones(m)
        scale[scale == 0.0] = 1.0
        A /= scale[:, None]
        b /= scale
        negative = b < 0.0
        A[negative] *= -1.0
        b[negative] *= -1.0

        self.m, self.n = m, n
        self.basis = np.arange(m) + n
        rows = np.hstack((A, np.eye(m), b[:, None]))
        objective = np.hstack((lp.objective, np.zeros(m), [0.0]))
        pseudo = -rows.sum(axis=0)
        pseudo[n:n + m] = 0.0
        self.T = np.vstack((rows, objective, pseudo))
        self.pivots = 0
        self.bland = False

    def _pivot_col(self, cost_row: int, n_allowed: int) -> Optional[int]:
        costs = self.T[cost_row, :n_allowed]
        candidates = np.nonzero(costs < -LP_PIVOT_TOL)[0]
        if candidates.size == 0:
            return None
        if self.bland:
            return int(candidates[0])
        return int(candidates[np.argmin(costs[candidates])])

    def _pivot_row(self, col: int) -> Optional[int]:
        column = self.T[:self.m, col]
        rows = np.nonzero(column > LP_PIVOT_TOL)[0]
        if rows.size == 0:
            return None
        ratios = self.T[rows, -1] / column[rows]
        best = ratios.min()
        ties = rows[ratios <= best + LP_PIVOT_TOL * max(1.0, abs(best))]
        if self.bland:
            return int(ties[np.argmin(self.basis[ties])])
        return int(ties[0])

    def _apply_pivot(self, row: int, col: int) -> None:
        self.basis[row] = col
        self.T[row] /= self.T[row, col]
        for irow in range(self.T.shape[0]):
            if irow != row and self.T[irow, col] != 0.0:
                self.T[irow] -= self.T[irow, col] * self.T[row]
        self.pivots += 1

    def run(self, cost_row: int, n_allowed: int) -> str:
        """Pivot until optimal for ``cost_row``; returns "optimal" or "unbounded"."""
        while True:
            if self.pivots >= LP_MAX_PIVOTS:
                raise LpCyclingError(
                    f"simplex exceeded {LP_MAX_PIVOTS} pivots without terminating",
                    pivots=self.pivots,
                )
            if not self.bland and self.pivots >= LP_BLAND_AFTER:
                self.bland = True
                logger.warning(f"Simplex switched to Bland's rule after {self.pivots} pivots")
            col = self._pivot_col(cost_row, n_allowed)
            if col is None:
                return "optimal"
            row = self._pivot_row(col)
            if row is None:
                return "unbounded"
            self._apply_pivot(row, col)

    def drive_out_artificials(self) -> None:
        """Pivot zero-level artificial variables out of the basis where possible."""
        for row in range(self.m):
            if self.basis[row] < self.n:
                continue
            nonzero = np.nonzero(np.abs(self.T[row, :self.n]) > LP_PIVOT_TOL)[0]
            if nonzero.size:
                self._apply_pivot(row, int(nonzero[0]))

    def solution(self) -> np.ndarray:
        full = np.zeros(self.n + self.m)
        full[self.basis] = self.T[:self.m, -1]
        return full[:self.n]


def _violation(lp: LinearProgram, x: np.ndarray) -> float:
    residual = np.abs(lp.A_eq @ x - lp.b_eq).max() if lp.n_constraints else 0.0
    return float(max(residual, -min(0.0, x.min()) if x.size else 0.0))


def _phase_one(lp: LinearProgram) -> tuple:
    if not (np.all(np.isfinite(lp.A_eq)) and np.all(np.isfinite(lp.b_eq))):
        raise DwsspValidationError("linear program entries must be finite")
    tab = _Tableau(lp)
    tab.run(cost_row=tab.m + 1, n_allowed=tab.n)
    artificial = float(max(0.0, -tab.T[-1, -1]))
    return tab, artificial


def lp_feasible(lp: LinearProgram) -> LpResult:
    """Phase 1 only: is ``{A x = b, x >= 0}`` nonempty?

    Feasible iff the minimized artificial sum is at most ``LP_FEASIBILITY_TOL``
    (on row-scaled constraints); a basic feasible point is returned then.
    """
    tab, artificial = _phase_one(lp)
    if artificial > LP_FEASIBILITY_TOL:
        logger.debug(f"LP infeasible: artificial objective {artificial:.3e} after {tab.pivots} pivots")
        return LpResult(feasible=False, artificial_objective=artificial, status="infeasible",
                        pivots=tab.pivots, max_violation=artificial, bland_engaged=tab.bland)
    x = tab.solution()
    return LpResult(feasible=True, x=x, artificial_objective=artificial, status="feasible",
                    objective_value=float(lp.objective @ x), pivots=tab.pivots,
                    max_violation=_violation(lp, x), bland_engaged=tab.bland)


def lp_solve(lp: LinearProgram) -> LpResult:
    """Phase 1 followed by phase 2 on ``lp.objective``."""
    tab, artificial = _phase_one(lp)
    if artificial > LP_FEASIBILITY_TOL:
        return LpResult(feasible=False, artificial_objective=artificial, status="infeasible",
                        pivots=tab.pivots, max_violation=artificial, bland_engaged=tab.bland)
    tab.drive_out_artificials()
    status = tab.run(cost_row=tab.m, n_allowed=tab.n)
    x = tab.solution()
    logger.debug(f"LP phase 2 {status} after {tab.pivots} pivots")
    return LpResult(feasible=True, x=x, artificial_objective=artificial, status=status,
                    objective_value=float(lp.objective @ x), pivots=tab.pivots,
                    max_violation=_violation(lp, x), bland_engaged=tab.bland)
