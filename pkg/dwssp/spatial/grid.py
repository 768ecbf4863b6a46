"""
Periodic uniform grids on the unit interval and functions sampled on them.
"""
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..config import CSV_FLOAT_FORMAT
from ..exceptions import DwsspValidationError
from ..utils import Utils


@dataclass(frozen=True)
class PeriodicGrid:
    """Nodes ``x_i = i * dx`` for ``i = 0..n-1``; the endpoint 1 is not duplicated."""
    n: int
    length: float = 1.0

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 2:
            raise DwsspValidationError(f"grid needs an integer n >= 2, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        if not self.length > 0.0:
            raise DwsspValidationError(f"grid length must be positive, got {self.length}")

    @property
    def dx(self) -> float:
        return self.length / self.n

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n) * self.dx

    def refine(self, factor: int) -> 'PeriodicGrid':
        return PeriodicGrid(self.n * int(factor), self.length)


@dataclass(frozen=True, eq=False)
class GridFunction:
    grid: PeriodicGrid
    values: np.ndarray

    def __post_init__(self):
        try:
            values = Utils.readonly(self.values, ndim=1, field="values")
        except ValueError as exc:
            raise DwsspValidationError(str(exc)) from exc
        if values.shape[0] != self.grid.n:
            raise DwsspValidationError(
                f"grid function has {values.shape[0]} values for a grid of {self.grid.n} points"
            )
        object.__setattr__(self, "values", values)

    def with_values(self, values: np.ndarray) -> 'GridFunction':
        return GridFunction(self.grid, values)

    def mirrored(self) -> 'GridFunction':
        """Index reversal ``u_i -> u_{n-1-i}``."""
        return GridFunction(self.grid, self.values[::-1])

    def total(self) -> float:
        return float(self.values.sum())

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({"x": self.grid.x, "u": np.asarray(self.values)})

    def to_csv(self) -> str:
        return self.to_frame().to_csv(index=False, float_format=CSV_FLOAT_FORMAT,
                                      lineterminator="\n")

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, length: float = 1.0) -> 'GridFunction':
        if list(frame.columns[:2]) != ["x", "u"]:
            raise DwsspValidationError("grid function frames need columns 'x' and 'u'")
        grid = PeriodicGrid(len(frame), length)
        if not np.allclose(frame["x"].to_numpy(), grid.x, rtol=0.0, atol=1e-12):
            raise DwsspValidationError("frame nodes do not form a uniform periodic grid")
        return cls(grid, frame["u"].to_numpy(dtype=float))


# ---------------------------------------------------------------------------
# Initial data and norms
# ---------------------------------------------------------------------------

def square_wave(grid: PeriodicGrid) -> GridFunction:
    """``1 - H(x - 1/2)``: one for ``x < 1/2``; a node at exactly 1/2 is zero."""
    return GridFunction(grid, np.where(grid.x < 0.5 * grid.length, 1.0, 0.0))


def sine_wave(grid: PeriodicGrid) -> GridFunction:
    return GridFunction(grid, np.sin(2.0 * np.pi * grid.x / grid.length))


def tv_seminorm(u: GridFunction) -> float:
    """Periodic total variation ``sum |u_{i+1} - u_i|``."""
    v = u.values
    return float(np.abs(np.roll(v, -1) - v).sum())


def max_norm(u: GridFunction) -> float:
    return float(np.abs(u.values).max())
