"""
Time stepping for downwind Runge-Kutta and multistep methods.
"""
from .integrate import run, step_schedule
from .newton import (NewtonResult, column_groups, fd_jacobian_operator, grouped_fd_jacobian,
                     newton_krylov_solve)
from .settings import (TRACE_COLUMNS, JacobianMode, MonitorRecord, MonitorTrace, NewtonSettings,
                       StepContext, StepStats)
from .stepper import (history_entry, linear_step_operator, lmm_step, lmm_step_values, rk_step,
                      rk_step_values)

__all__ = [
    "JacobianMode", "NewtonSettings", "StepContext", "StepStats",
    "MonitorRecord", "MonitorTrace", "TRACE_COLUMNS",
    "NewtonResult", "fd_jacobian_operator", "column_groups", "grouped_fd_jacobian",
    "newton_krylov_solve",
    "rk_step", "rk_step_values", "lmm_step", "lmm_step_values", "history_entry",
    "linear_step_operator", "run", "step_schedule",
]
