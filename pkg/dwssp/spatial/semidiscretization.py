"""
Paired upwind/downwind semi-discretizations used by the time steppers.
"""
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional

import numpy as np

from ..config import MIN_GRID_POINTS
from ..exceptions import DwsspValidationError
from .grid import GridFunction, PeriodicGrid
from .operators import (Direction, SpatialScheme, downwind_first_values, operator_matrices,
                        upwind_first_values)
from .weno import FluxSplitting, weno5_advection_values, weno5_burgers_values

logger = logging.getLogger(__name__)

ArrayMap = Callable[[np.ndarray], np.ndarray]

# WENO5 fluxes at i +- 1/2 read cells i-3..i+3
WENO_STENCIL_RADIUS = 3


class Equation(str, Enum):
    ADVECTION = "advection"
    BURGERS = "burgers"


@dataclass(frozen=True, eq=False)
class SemiDiscretization:
    """``F`` (upwind-biased, ``~ -f(u)_x``) and ``Ftilde`` (downwind-biased, ``~ +f(u)_x``).

    ``F_values``/``Ftilde_values`` act on raw arrays; ``apply_F`` and
    ``apply_Ftilde`` wrap them for grid functions. Linear instances carry
    ``L``/``Ltilde`` with ``F = L u`` and ``Ftilde = -Ltilde u``.
    ``stencil_radius`` is how many neighbours on each side an entry of ``F``
    or ``Ftilde`` reads; ``None`` means unknown (treated as dense).
    """
    grid: PeriodicGrid
    F_values: ArrayMap
    Ftilde_values: ArrayMap
    dt_fe: float
    name: str = ""
    L: Optional[np.ndarray] = field(default=None, repr=False)
    Ltilde: Optional[np.ndarray] = field(default=None, repr=False)
    stencil_radius: Optional[int] = None

    def __post_init__(self):
        if not self.dt_fe > 0.0:
            raise DwsspValidationError(f"forward-Euler step bound must be positive, got {self.dt_fe}")
        if (self.L is None) != (self.Ltilde is None):
            raise DwsspValidationError("L and Ltilde must be given together")
        if self.stencil_radius is not None and self.stencil_radius < 0:
            raise DwsspValidationError(f"stencil radius must be nonnegative, got {self.stencil_radius}")

    @property
    def linear(self) -> bool:
        return self.L is not None

    @property
    def n(self) -> int:
        return self.grid.n

    def apply_F(self, u: GridFunction) -> GridFunction:
        return u.with_values(self.F_values(u.values))

    def apply_Ftilde(self, u: GridFunction) -> GridFunction:
        return u.with_values(self.Ftilde_values(u.values))

    def coupling_pattern(self) -> np.ndarray:
        """Boolean ``n x n`` mask of which values each operator entry can read."""
        n = self.n
        if self.stencil_radius is None or 2 * self.stencil_radius + 1 >= n:
            return np.ones((n, n), dtype=bool)
        offset = np.subtract.outer(np.arange(n), np.arange(n)) % n
        return np.minimum(offset, n - offset) <= self.stencil_radius

    @property
    def M(self) -> np.ndarray:
        """Matrix of ``F``."""
        return self.L

    @property
    def Mtilde(self) -> np.ndarray:
        """Matrix of ``Ftilde``, i.e. ``-Ltilde``."""
        return -self.Ltilde


def make_semidiscretization(scheme: SpatialScheme, equation: Equation, grid: PeriodicGrid,
                            u0: Optional[GridFunction] = None,
                            splitting: FluxSplitting = FluxSplitting.LAX_FRIEDRICHS) -> SemiDiscretization:
    """Build the operator pair for *equation* on *grid*.

    ``dt_fe`` is ``dx`` for advection and ``dx / max|u0|`` for Burgers;
    *splitting* only applies to Burgers.
    """
    scheme, equation = SpatialScheme(scheme), Equation(equation)
    splitting = FluxSplitting(splitting)
    dx = grid.dx
    if scheme is SpatialScheme.WENO5 and grid.n < MIN_GRID_POINTS:
        raise DwsspValidationError(f"WENO5 needs at least {MIN_GRID_POINTS} grid points, got {grid.n}")

    if equation is Equation.ADVECTION:
        if scheme is SpatialScheme.FIRST:
            L, Ltilde = operator_matrices(scheme, grid)
            return SemiDiscretization(
                grid=grid,
                F_values=lambda v: upwind_first_values(v, dx),
                Ftilde_values=lambda v: downwind_first_values(v, dx),
                dt_fe=dx, name="advection/first", L=L, Ltilde=Ltilde, stencil_radius=1,
            )
        return SemiDiscretization(
            grid=grid,
            F_values=lambda v: weno5_advection_values(v, dx, Direction.UPWIND),
            Ftilde_values=lambda v: weno5_advection_values(v, dx, Direction.DOWNWIND),
            dt_fe=dx, name="advection/weno5", stencil_radius=WENO_STENCIL_RADIUS,
        )

    if scheme is not SpatialScheme.WENO5:
        raise DwsspValidationError("Burgers is only discretized with WENO5")
    if u0 is None:
        raise DwsspValidationError("Burgers needs initial data to fix the forward-Euler step bound")
    speed = float(np.abs(u0.values).max())
    if speed == 0.0:
        raise DwsspValidationError("Burgers initial data must not vanish identically")
    logger.debug(f"Burgers forward-Euler bound dx/{speed:g} on n={grid.n} ({splitting.value} splitting)")
    return SemiDiscretization(
        grid=grid,
        F_values=lambda v: weno5_burgers_values(v, dx, Direction.UPWIND, splitting),
        Ftilde_values=lambda v: weno5_burgers_values(v, dx, Direction.DOWNWIND, splitting),
        dt_fe=dx / speed, name="burgers/weno5", stencil_radius=WENO_STENCIL_RADIUS,
    )
