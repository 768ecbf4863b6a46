"""
Fifth-order WENO (Jiang-Shu weights) in conservative flux-difference form.

``reconstruct_left`` gives the left-biased value at ``i + 1/2`` from cells
``i-2..i+2``; ``reconstruct_right`` gives the right-biased value at the same
face from cells ``i-1..i+3``. Upwind operators approximate ``-f(u)_x``,
downwind operators ``+f(u)_x`` with every bias reversed.
"""
from enum import Enum

import numpy as np

from ..config import MIN_GRID_POINTS, WENO_EPS, WENO_LINEAR_WEIGHTS, WENO_POWER
from ..exceptions import DwsspValidationError
from .grid import GridFunction
from .operators import Direction


def smoothness_indicators(v: np.ndarray) -> np.ndarray:
    vm2, vm1 = np.roll(v, 2), np.roll(v, 1)
    vp1, vp2 = np.roll(v, -1), np.roll(v, -2)
    return np.stack([
        13.0 / 12.0 * (vm2 - 2.0 * vm1 + v) ** 2 + 0.25 * (vm2 - 4.0 * vm1 + 3.0 * v) ** 2,
        13.0 / 12.0 * (vm1 - 2.0 * v + vp1) ** 2 + 0.25 * (vm1 - vp1) ** 2,
        13.0 / 12.0 * (v - 2.0 * vp1 + vp2) ** 2 + 0.25 * (3.0 * v - 4.0 * vp1 + vp2) ** 2,
    ])


def nonlinear_weights(v: np.ndarray) -> np.ndarray:
    beta = smoothness_indicators(v)
    alpha = np.asarray(WENO_LINEAR_WEIGHTS)[:, None] / (WENO_EPS + beta) ** WENO_POWER
    return alpha / alpha.sum(axis=0, keepdims=True)


def reconstruct_left(v: np.ndarray) -> np.ndarray:
    """Left-biased face values ``v_{i+1/2}^-``."""
    w0, w1, w2 = nonlinear_weights(v)
    vm2, vm1 = np.roll(v, 2), np.roll(v, 1)
    vp1, vp2 = np.roll(v, -1), np.roll(v, -2)
    q0 = (2.0 * vm2 - 7.0 * vm1 + 11.0 * v) / 6.0
    q1 = (-vm1 + 5.0 * v + 2.0 * vp1) / 6.0
    q2 = (2.0 * v + 5.0 * vp1 - vp2) / 6.0
    return w0 * q0 + w1 * q1 + w2 * q2


def reconstruct_right(v: np.ndarray) -> np.ndarray:
    """Right-biased face values ``v_{i+1/2}^+`` (mirror image of the left stencil)."""
    return np.roll(reconstruct_left(v[::-1])[::-1], -1)


def _check_size(u: GridFunction) -> None:
    if u.grid.n < MIN_GRID_POINTS:
        raise DwsspValidationError(
            f"WENO5 needs at least {MIN_GRID_POINTS} grid points, got {u.grid.n}"
        )


def _divergence(face: np.ndarray, dx: float) -> np.ndarray:
    return (face - np.roll(face, 1)) / dx


def weno5_advection_values(v: np.ndarray, dx: float, direction: Direction) -> np.ndarray:
    if Direction(direction) is Direction.UPWIND:
        return -_divergence(reconstruct_left(v), dx)
    return _divergence(reconstruct_right(v), dx)


class FluxSplitting(str, Enum):
    LAX_FRIEDRICHS = "lax-friedrichs"
    ENGQUIST_OSHER = "engquist-osher"


def split_burgers_flux(v: np.ndarray, splitting: FluxSplitting = FluxSplitting.LAX_FRIEDRICHS):
    """``(f+, f-)`` with ``f+ + f- = u^2/2``, ``f+`` nondecreasing and ``f-`` nonincreasing in ``u``.

    Lax-Friedrichs: ``f+- = (u^2/2 +- a u) / 2`` with global ``a = max |u|``.
    Engquist-Osher: ``f+ = max(u, 0)^2 / 2``, ``f- = min(u, 0)^2 / 2``; no
    artificial viscosity where ``u`` changes sign.
    """
    if FluxSplitting(splitting) is FluxSplitting.ENGQUIST_OSHER:
        return 0.5 * np.maximum(v, 0.0) ** 2, 0.5 * np.minimum(v, 0.0) ** 2
    a = float(np.abs(v).max())
    flux = 0.5 * v * v
    return 0.5 * (flux + a * v), 0.5 * (flux - a * v)


def weno5_burgers_values(v: np.ndarray, dx: float, direction: Direction,
                         splitting: FluxSplitting = FluxSplitting.LAX_FRIEDRICHS) -> np.ndarray:
    f_plus, f_minus = split_burgers_flux(v, splitting)
    if Direction(direction) is Direction.UPWIND:
        return -_divergence(reconstruct_left(f_plus) + reconstruct_right(f_minus), dx)
    return _divergence(reconstruct_right(f_plus) + reconstruct_left(f_minus), dx)


def weno5_advection(u: GridFunction, direction: Direction = Direction.UPWIND) -> GridFunction:
    """Unit-speed advection; upwind approximates ``-u_x``, downwind ``+u_x``."""
    _check_size(u)
    return u.with_values(weno5_advection_values(u.values, u.grid.dx, direction))


def weno5_burgers(u: GridFunction, direction: Direction = Direction.UPWIND,
                  splitting: FluxSplitting = FluxSplitting.LAX_FRIEDRICHS) -> GridFunction:
    """Burgers flux ``u^2/2``; upwind approximates ``-(u^2/2)_x``, downwind ``+(u^2/2)_x``."""
    _check_size(u)
    return u.with_values(weno5_burgers_values(u.values, u.grid.dx, direction, splitting))
