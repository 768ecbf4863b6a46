"""
Periodic-grid spatial operators.
"""
from .grid import GridFunction, PeriodicGrid, max_norm, sine_wave, square_wave, tv_seminorm
from .operators import (Direction, SpatialScheme, downwind_first, operator_matrices,
                        upwind_first)
from .semidiscretization import Equation, SemiDiscretization, make_semidiscretization
from .weno import (FluxSplitting, reconstruct_left, reconstruct_right, split_burgers_flux,
                   weno5_advection, weno5_burgers)

__all__ = [
    "PeriodicGrid", "GridFunction", "square_wave", "sine_wave", "tv_seminorm", "max_norm",
    "Direction", "SpatialScheme", "upwind_first", "downwind_first", "operator_matrices",
    "reconstruct_left", "reconstruct_right", "weno5_advection", "weno5_burgers",
    "FluxSplitting", "split_burgers_flux",
    "Equation", "SemiDiscretization", "make_semidiscretization",
]
