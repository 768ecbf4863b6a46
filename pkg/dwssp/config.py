"""
Central configuration defaults for the dwssp project.
"""

from __future__ import annotations

import logging
import math
import os

try:
    from dotenv import load_dotenv
except ImportError:  # pragma: no cover - optional convenience dependency
    load_dotenv = None

if load_dotenv is not None:
    load_dotenv()


def _get_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        return default


def _get_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


DEFAULT_LOG_LEVEL_NAME = os.getenv("DWSSP_LOG_LEVEL", "INFO").upper()
DEFAULT_LOG_LEVEL = getattr(logging, DEFAULT_LOG_LEVEL_NAME, logging.INFO)
DEFAULT_LOG_FORMAT = os.getenv(
    "DWSSP_LOG_FORMAT",
    "%(asctime)s - %(name)s - %(levelname)s - %(message)s",
)

# Methods
FAMILY_MIN_R = 2.0 + math.sqrt(2.0)
DEFAULT_FAMILY_R = _get_float("DWSSP_DEFAULT_FAMILY_R", 8.0)
MAX_ORDER_CONDITIONS = 3
MAX_STABILITY_STAGES = 4
CONSISTENCY_TOL = 1e-12
SINGULAR_RTOL = _get_float("DWSSP_SINGULAR_RTOL", 1e-12)
POLE_RTOL = 1e-14

# SSP certification
LP_FEASIBILITY_TOL = _get_float("DWSSP_LP_FEASIBILITY_TOL", 1e-9)
LP_PIVOT_TOL = 1e-12
LP_BLAND_AFTER = _get_int("DWSSP_LP_BLAND_AFTER", 1000)
LP_MAX_PIVOTS = _get_int("DWSSP_LP_MAX_PIVOTS", 100_000)
DEFAULT_BISECTION_TOL = _get_float("DWSSP_BISECTION_TOL", 1e-8)
SSP_BRACKET_CAP = _get_float("DWSSP_SSP_BRACKET_CAP", 1e6)
CERTIFICATE_NEGATIVE_TOL = 1e-12

# Spatial operators
MIN_GRID_POINTS = 5
WENO_EPS = _get_float("DWSSP_WENO_EPS", 1e-6)
WENO_POWER = 2
WENO_LINEAR_WEIGHTS = (0.1, 0.6, 0.3)

# Implicit solves
NEWTON_ABS_TOL = _get_float("DWSSP_NEWTON_ABS_TOL", 1e-10)
NEWTON_REL_TOL = _get_float("DWSSP_NEWTON_REL_TOL", 1e-12)
NEWTON_MAX_ITER = _get_int("DWSSP_NEWTON_MAX_ITER", 50)
GMRES_RESTART = _get_int("DWSSP_GMRES_RESTART", 30)
GMRES_MAX_CYCLES = _get_int("DWSSP_GMRES_MAX_CYCLES", 20)
KRYLOV_TOL = _get_float("DWSSP_KRYLOV_TOL", 1e-4)
# Largest stacked system that gets a grouped finite-difference Jacobian as GMRES preconditioner
PRECONDITION_MAX_SIZE = _get_int("DWSSP_PRECONDITION_MAX_SIZE", 4096)

# Experiments and artifacts
BURGERS_T_END = 0.16
BURGERS_REFERENCE_REFINEMENT = 8
BURGERS_REFERENCE_CFL = 0.4
BURGERS_SPLITTING = os.getenv("DWSSP_BURGERS_SPLITTING", "engquist-osher")
DISSIPATION_POLLUTION_RATIO = 1.0
CSV_FLOAT_FORMAT = "%.17g"
DEFAULT_OUTPUT_DIR = os.path.expanduser(os.getenv("DWSSP_OUTPUT_DIR", "./dwssp-out"))
MAX_JOBS = _get_int("DWSSP_MAX_JOBS", 4)

__all__ = [
    "DEFAULT_LOG_LEVEL_NAME",
    "DEFAULT_LOG_LEVEL",
    "DEFAULT_LOG_FORMAT",
    "FAMILY_MIN_R",
    "DEFAULT_FAMILY_R",
    "MAX_ORDER_CONDITIONS",
    "MAX_STABILITY_STAGES",
    "CONSISTENCY_TOL",
    "SINGULAR_RTOL",
    "POLE_RTOL",
    "LP_FEASIBILITY_TOL",
    "LP_PIVOT_TOL",
    "LP_BLAND_AFTER",
    "LP_MAX_PIVOTS",
    "DEFAULT_BISECTION_TOL",
    "SSP_BRACKET_CAP",
    "CERTIFICATE_NEGATIVE_TOL",
    "MIN_GRID_POINTS",
    "WENO_EPS",
    "WENO_POWER",
    "WENO_LINEAR_WEIGHTS",
    "NEWTON_ABS_TOL",
    "NEWTON_REL_TOL",
    "NEWTON_MAX_ITER",
    "GMRES_RESTART",
    "GMRES_MAX_CYCLES",
    "KRYLOV_TOL",
    "PRECONDITION_MAX_SIZE",
    "BURGERS_T_END",
    "BURGERS_REFERENCE_REFINEMENT",
    "BURGERS_REFERENCE_CFL",
    "BURGERS_SPLITTING",
    "DISSIPATION_POLLUTION_RATIO",
    "CSV_FLOAT_FORMAT",
    "DEFAULT_OUTPUT_DIR",
    "MAX_JOBS",
]
