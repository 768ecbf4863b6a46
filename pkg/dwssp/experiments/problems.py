"""
Test problems, experiment descriptions and reference solutions.
"""
import functools
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Optional, Tuple

import numpy as np

from ..config import (BURGERS_REFERENCE_CFL, BURGERS_REFERENCE_REFINEMENT, BURGERS_SPLITTING,
                      BURGERS_T_END, DEFAULT_FAMILY_R, FAMILY_MIN_R, MIN_GRID_POINTS)
from ..exceptions import DwsspValidationError, ExperimentError
from ..methods.catalog import catalog_method, resolve_method
from ..spatial.grid import GridFunction, PeriodicGrid, sine_wave, square_wave
from ..spatial.operators import SpatialScheme
from ..spatial.semidiscretization import Equation, make_semidiscretization
from ..spatial.weno import FluxSplitting

logger = logging.getLogger(__name__)

MIN_BURGERS_POINTS = 64
T_END_RTOL = 1e-12


class Problem(str, Enum):
    ADVECTION_SQUARE = "advection-square"
    ADVECTION_SINE = "advection-sine"
    BURGERS = "burgers"

    @property
    def equation(self) -> Equation:
        return Equation.BURGERS if self is Problem.BURGERS else Equation.ADVECTION


def default_methods(r: float = DEFAULT_FAMILY_R) -> Tuple[str, ...]:
    """The three comparators: backward Euler, implicit trapezoid, downwind family."""
    return ("backward-euler", "trapezoidal", f"dw-family:{r:g}")


_DEFAULTS: Dict[Problem, Dict[str, Any]] = {
    Problem.ADVECTION_SQUARE: {"n": 128, "cfl": 8.0, "t_end": 1.0, "spatial": SpatialScheme.FIRST},
    Problem.ADVECTION_SINE: {"n": 128, "cfl": 8.0, "t_end": 1.0, "spatial": SpatialScheme.WENO5},
    Problem.BURGERS: {"n": 512, "cfl": 6.5, "t_end": BURGERS_T_END, "spatial": SpatialScheme.WENO5},
}


def _as_enum(enum_cls, value, what: str):
    try:
        return enum_cls(value)
    except ValueError as exc:
        choices = ", ".join(member.value for member in enum_cls)
        raise DwsspValidationError(f"unknown {what} {value!r}; expected one of {choices}") from exc


def _positive(value: Any, what: str) -> float:
    try:
        out = float(value)
    except (TypeError, ValueError) as exc:
        raise DwsspValidationError(f"{what} must be a number, got {value!r}") from exc
    if not (math.isfinite(out) and out > 0.0):
        raise DwsspValidationError(f"{what} must be positive, got {value!r}")
    return out


def _grid_size(value: Any, spatial: SpatialScheme, problem: Problem) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)):
        raise DwsspValidationError(f"grid size must be an integer, got {value!r}")
    n = int(value)
    lowest = 2
    if spatial is SpatialScheme.WENO5:
        lowest = MIN_GRID_POINTS
    if problem is Problem.BURGERS:
        lowest = MIN_BURGERS_POINTS
    if n < lowest:
        raise DwsspValidationError(f"{problem.value} with {spatial.value} needs n >= {lowest}, got {n}")
    return n


@dataclass(frozen=True)
class ExperimentSpec:
    """One comparison run: a problem, a grid (or a list of grids) and methods.

    A non-empty ``sizes`` makes it a convergence study over those grids;
    ``n`` is then ignored. ``second_cfl`` adds a second downwind-family run
    for the Burgers CFL comparison; ``splitting`` picks the Burgers flux
    splitting.
    """
    problem: Problem
    n: int = 128
    cfl: float = 8.0
    t_end: float = 1.0
    methods: Tuple[str, ...] = field(default_factory=default_methods)
    spatial: SpatialScheme = SpatialScheme.FIRST
    r: float = DEFAULT_FAMILY_R
    sizes: Tuple[int, ...] = ()
    second_cfl: Optional[float] = None
    splitting: FluxSplitting = BURGERS_SPLITTING

    def __post_init__(self):
        problem = _as_enum(Problem, self.problem, "problem")
        spatial = _as_enum(SpatialScheme, self.spatial, "spatial scheme")
        object.__setattr__(self, "problem", problem)
        object.__setattr__(self, "spatial", spatial)
        object.__setattr__(self, "splitting", _as_enum(FluxSplitting, self.splitting, "flux splitting"))
        if problem is Problem.BURGERS and spatial is not SpatialScheme.WENO5:
            raise DwsspValidationError("Burgers runs use the weno5 spatial scheme")
        object.__setattr__(self, "cfl", _positive(self.cfl, "cfl"))
        object.__setattr__(self, "t_end", _positive(self.t_end, "t_end"))
        if problem is Problem.BURGERS:
            check_burgers_time(self.t_end)
        r = _positive(self.r, "r")
        if r <= FAMILY_MIN_R:
            raise DwsspValidationError(f"family parameter r must exceed 2 + sqrt(2), got {r:g}")
        object.__setattr__(self, "r", r)
        if self.second_cfl is not None:
            object.__setattr__(self, "second_cfl", _positive(self.second_cfl, "second_cfl"))

        object.__setattr__(self, "n", _grid_size(self.n, spatial, problem))
        sizes = tuple(_grid_size(n, spatial, problem) for n in self.sizes)
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise DwsspValidationError(f"sizes must be strictly ascending, got {list(sizes)}")
        object.__setattr__(self, "sizes", sizes)

        methods = tuple(str(m) for m in self.methods)
        if not methods:
            raise DwsspValidationError("an experiment needs at least one method")
        if len(set(methods)) != len(methods):
            raise DwsspValidationError(f"duplicate methods in {list(methods)}")
        for name in methods:
            resolve_method(name)
        object.__setattr__(self, "methods", methods)

    @classmethod
    def for_problem(cls, problem: Problem, **overrides) -> 'ExperimentSpec':
        """Defaults for *problem* with ``None``-valued overrides ignored."""
        problem = _as_enum(Problem, problem, "problem")
        values = dict(_DEFAULTS[problem])
        values.update({k: v for k, v in overrides.items() if v is not None})
        if "methods" not in values:
            values["methods"] = default_methods(values.get("r", DEFAULT_FAMILY_R))
        return cls(problem=problem, **values)

    @property
    def is_convergence_study(self) -> bool:
        return bool(self.sizes)

    @property
    def family_method(self) -> str:
        return f"dw-family:{self.r:g}"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "problem": self.problem.value,
            "n": self.n,
            "cfl": self.cfl,
            "t_end": self.t_end,
            "methods": list(self.methods),
            "spatial": self.spatial.value,
            "r": self.r,
            "sizes": list(self.sizes),
            "second_cfl": self.second_cfl,
            "splitting": self.splitting.value,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ExperimentSpec':
        if not isinstance(data, dict) or "problem" not in data:
            raise DwsspValidationError("experiment spec must be a mapping with a 'problem' field")
        known = {"problem", "n", "cfl", "t_end", "methods", "spatial", "r", "sizes", "second_cfl",
                 "splitting"}
        unknown = sorted(set(data) - known)
        if unknown:
            raise DwsspValidationError(f"unknown experiment field(s): {', '.join(unknown)}")
        overrides = {k: v for k, v in data.items() if k != "problem"}
        for key in ("methods", "sizes"):
            if overrides.get(key) is not None:
                overrides[key] = tuple(overrides[key])
        return cls.for_problem(data["problem"], **overrides)


# ---------------------------------------------------------------------------
# Initial data and references
# ---------------------------------------------------------------------------

def check_burgers_time(t_end: float) -> None:
    if abs(t_end - BURGERS_T_END) > T_END_RTOL * BURGERS_T_END:
        raise ExperimentError(
            f"Burgers references exist only at t_end={BURGERS_T_END:g} (just after shock formation), "
            f"got {t_end:g}"
        )


def initial_data(problem: Problem, grid: PeriodicGrid) -> GridFunction:
    problem = _as_enum(Problem, problem, "problem")
    if problem is Problem.ADVECTION_SQUARE:
        return square_wave(grid)
    return sine_wave(grid)


def _shifted(problem: Problem, grid: PeriodicGrid, t: float) -> GridFunction:
    x = np.mod(grid.x - t, grid.length)
    if problem is Problem.ADVECTION_SQUARE:
        values = np.where(x < 0.5 * grid.length, 1.0, 0.0)
    else:
        values = np.sin(2.0 * np.pi * x / grid.length)
    return GridFunction(grid, values)


@functools.lru_cache(maxsize=8)
def _burgers_reference(n: int, splitting: FluxSplitting, refinement: int) -> GridFunction:
    from ..solver.integrate import run

    fine = PeriodicGrid(n * refinement)
    u0 = sine_wave(fine)
    semi = make_semidiscretization(SpatialScheme.WENO5, Equation.BURGERS, fine, u0, splitting)
    logger.info(f"Computing Burgers reference on n={fine.n} (SSPRK33, cfl={BURGERS_REFERENCE_CFL:g})")
    u, _ = run(catalog_method("ssprk33"), semi, BURGERS_REFERENCE_CFL, BURGERS_T_END, u0,
               label="burgers-reference")
    return GridFunction(PeriodicGrid(n), u.values[::refinement])


def reference_solution(problem: Problem, n: int, t_end: float,
                       splitting: FluxSplitting = BURGERS_SPLITTING,
                       refinement: int = BURGERS_REFERENCE_REFINEMENT) -> GridFunction:
    """Exact periodic shift for advection; fine-grid numerical oracle for Burgers.

    The Burgers reference runs SSPRK33 with WENO5 on a grid *refinement*
    times finer and keeps every *refinement*-th node, so it samples the same
    points as the coarse grid.

    Raises:
        ExperimentError: For Burgers at any time other than 0.16.
    """
    problem = _as_enum(Problem, problem, "problem")
    t_end = _positive(t_end, "t_end")
    if problem is Problem.BURGERS:
        check_burgers_time(t_end)
        if isinstance(refinement, bool) or int(refinement) != refinement or refinement < 1:
            raise DwsspValidationError(f"reference refinement must be a positive integer, got {refinement!r}")
        return _burgers_reference(_grid_size(n, SpatialScheme.WENO5, problem),
                                  _as_enum(FluxSplitting, splitting, "flux splitting"), int(refinement))
    return _shifted(problem, PeriodicGrid(n), t_end)
