"""
First-order upwind/downwind differences for unit-speed advection.

``F(u) = L u`` approximates ``-u_x`` and ``Ftilde(u) = -Ltilde u``
approximates ``+u_x``; ``L - Ltilde`` is the periodic second difference
divided by ``dx``.
"""
from enum import Enum
from typing import Tuple

import numpy as np

from ..exceptions import DwsspValidationError
from .grid import GridFunction, PeriodicGrid


class Direction(str, Enum):
    UPWIND = "upwind"
    DOWNWIND = "downwind"


class SpatialScheme(str, Enum):
    FIRST = "first"
    WENO5 = "weno5"


def upwind_first_values(v: np.ndarray, dx: float) -> np.ndarray:
    return -(v - np.roll(v, 1)) / dx


def downwind_first_values(v: np.ndarray, dx: float) -> np.ndarray:
    return (np.roll(v, -1) - v) / dx


def upwind_first(u: GridFunction) -> GridFunction:
    """``F_i = -(u_i - u_{i-1}) / dx``."""
    return u.with_values(upwind_first_values(u.values, u.grid.dx))


def downwind_first(u: GridFunction) -> GridFunction:
    """``Ftilde_i = (u_{i+1} - u_i) / dx``."""
    return u.with_values(downwind_first_values(u.values, u.grid.dx))


def operator_matrices(scheme: SpatialScheme, grid: PeriodicGrid) -> Tuple[np.ndarray, np.ndarray]:
    """Dense circulants ``(L, Ltilde)`` with ``F = L u`` and ``Ftilde = -Ltilde u``.

    Raises:
        DwsspValidationError: For nonlinear schemes.
    """
    if SpatialScheme(scheme) is not SpatialScheme.FIRST:
        raise DwsspValidationError(f"{SpatialScheme(scheme).value} is nonlinear and has no operator matrix")
    n = grid.n
    eye = np.eye(n)
    shift_back = np.roll(eye, -1, axis=1)  # (shift_back @ u)_i = u_{i-1}
    L = (shift_back - eye) / grid.dx
    Ltilde = (eye - shift_back.T) / grid.dx
    return L, Ltilde
