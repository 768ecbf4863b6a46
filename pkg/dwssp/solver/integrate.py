"""
Fixed-step time integration with monotonicity monitoring.
"""
import logging
import math
from collections import deque
from typing import Optional, Tuple

import numpy as np

from ..config import DEFAULT_FAMILY_R
from ..exceptions import ConvergenceError, DwsspValidationError
from ..methods.catalog import family_tableau
from ..methods.tableau import DownwindLmm, DownwindTableau
from ..spatial.grid import GridFunction, max_norm, tv_seminorm
from ..spatial.semidiscretization import SemiDiscretization
from .settings import MonitorRecord, MonitorTrace, NewtonSettings, StepContext, StepStats
from .stepper import lmm_step_values, rk_step_values

logger = logging.getLogger(__name__)

# relative slack when counting steps, so t_end = N * dt does not add a sliver step
_STEP_COUNT_RTOL = 1e-12


def step_schedule(dt: float, t_end: float):
    """Yield ``(step, t_new, h)``; the last step is shortened to land on *t_end*."""
    n_steps = max(1, math.ceil(t_end / dt * (1.0 - _STEP_COUNT_RTOL)))
    for step in range(1, n_steps + 1):
        if step < n_steps:
            yield step, step * dt, dt
        else:
            yield step, t_end, t_end - (n_steps - 1) * dt


def _record(trace: MonitorTrace, step: int, t: float, u: GridFunction, stats: StepStats) -> None:
    trace.append(MonitorRecord(step=step, t=t, tv=tv_seminorm(u), maxnorm=max_norm(u),
                               newton_iters=stats.newton_iterations, residual=stats.residual))


def run(method, semi: SemiDiscretization, cfl: float, t_end: float, u0: GridFunction,
        settings: Optional[NewtonSettings] = None, label: str = "",
        startup_r: float = DEFAULT_FAMILY_R) -> Tuple[GridFunction, MonitorTrace]:
    """Integrate from ``t = 0`` to *t_end* with ``dt = cfl * semi.dt_fe``.

    Multistep methods take their first ``k - 1`` steps, and a shortened final
    step, with the downwind family at parameter *startup_r*. The trace
    starts with the initial data at step 0.
    """
    if not (np.isfinite(t_end) and t_end > 0.0):
        raise DwsspValidationError(f"t_end must be positive, got {t_end}")
    if not (np.isfinite(cfl) and cfl > 0.0):
        raise DwsspValidationError(f"cfl must be positive, got {cfl}")
    if u0.grid != semi.grid:
        raise DwsspValidationError("initial data lives on a different grid than the operators")
    settings = settings or NewtonSettings()
    dt = cfl * semi.dt_fe
    ctx = StepContext(method=method, semi=semi, dt=dt, newton=settings)
    label = label or getattr(method, "name", "") or type(method).__name__
    trace = MonitorTrace(label)
    _record(trace, 0, 0.0, u0, StepStats())
    logger.info(f"Running {label} on {semi.name} (n={semi.n}, cfl={cfl:g}, dt={dt:.6g}, t_end={t_end:g})")

    u = np.array(u0.values, dtype=float)
    if isinstance(method, DownwindTableau):
        history = None
    elif isinstance(method, DownwindLmm):
        startup_ctx = StepContext(method=family_tableau(startup_r), semi=semi, dt=dt, newton=settings)
        history = deque(maxlen=method.k)
        history.append((u.copy(), semi.F_values(u), semi.Ftilde_values(u)))
    else:
        raise DwsspValidationError(f"cannot integrate with {type(method).__name__}")

    for step, t_new, h in step_schedule(dt, t_end):
        try:
            if history is None:
                u, stats = rk_step_values(ctx, u, h)
            elif len(history) < method.k or h != dt:
                u, stats = rk_step_values(startup_ctx, u, h)
            else:
                u, stats = lmm_step_values(ctx, list(history), h)
        except ConvergenceError:
            logger.error(f"{label}: solver failed at step {step} (t={t_new:g})")
            raise
        if history is not None:
            history.append((u.copy(), semi.F_values(u), semi.Ftilde_values(u)))
        _record(trace, step, t_new, GridFunction(semi.grid, u), stats)

    logger.info(f"{label}: finished {len(trace) - 1} steps, "
                f"max TV increase {trace.max_tv_increase():.3e}, peak |u| {trace.max_norm_peak():.6g}")
    return GridFunction(semi.grid, u), trace
