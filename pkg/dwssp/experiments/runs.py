"""
The comparison studies: square-wave advection, the sine-wave convergence
table, Burgers shock formation and the dissipation estimate.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, TypeVar

import numpy as np
import pandas as pd

from ..config import DEFAULT_FAMILY_R, DISSIPATION_POLLUTION_RATIO, MAX_JOBS
from ..exceptions import DwsspValidationError
from ..methods.catalog import resolve_method
from ..solver.integrate import run
from ..solver.settings import MonitorTrace, NewtonSettings
from ..spatial.grid import GridFunction, PeriodicGrid
from ..spatial.operators import SpatialScheme
from ..spatial.semidiscretization import make_semidiscretization
from ..spatial.weno import FluxSplitting
from .problems import ExperimentSpec, Problem, initial_data, reference_solution

logger = logging.getLogger(__name__)

T = TypeVar("T")


def run_jobs(jobs: Sequence[Callable[[], T]], max_workers: int = 1) -> List[T]:
    """Run independent jobs, returning results in submission order."""
    workers = max(1, min(int(max_workers), MAX_JOBS, len(jobs) or 1))
    if workers == 1:
        return [job() for job in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(job) for job in jobs]
        return [future.result() for future in futures]


def max_error(u: GridFunction, reference: GridFunction) -> float:
    if u.grid.n != reference.grid.n:
        raise DwsspValidationError(f"cannot compare n={u.grid.n} against a reference with n={reference.grid.n}")
    return float(np.abs(u.values - reference.values).max())


@dataclass
class ExperimentResult:
    """Final solutions and traces keyed by run label, in a fixed order."""
    spec: ExperimentSpec
    solutions: Dict[str, GridFunction] = field(default_factory=dict)
    traces: Dict[str, MonitorTrace] = field(default_factory=dict)
    reference: Optional[GridFunction] = None
    errors: Dict[str, float] = field(default_factory=dict)
    table: Optional[List['ConvergenceRow']] = None


def _run_methods(spec: ExperimentSpec, n: int, labels: Sequence[Tuple[str, str, float]],
                 settings: Optional[NewtonSettings], jobs: int):
    """``labels`` holds ``(label, method identifier, cfl)`` triples."""
    grid = PeriodicGrid(n)
    u0 = initial_data(spec.problem, grid)
    semi = make_semidiscretization(spec.spatial, spec.problem.equation, grid, u0, spec.splitting)

    def job(method_name: str, cfl: float, label: str):
        return lambda: run(resolve_method(method_name), semi, cfl, spec.t_end, u0, settings, label=label)

    outputs = run_jobs([job(name, cfl, label) for label, name, cfl in labels], jobs)
    return {label: out for (label, _, _), out in zip(labels, outputs)}


def _collect(spec: ExperimentSpec, outputs, reference: GridFunction) -> ExperimentResult:
    result = ExperimentResult(spec=spec, reference=reference)
    for label, (u, trace) in outputs.items():
        result.solutions[label] = u
        result.traces[label] = trace
        result.errors[label] = max_error(u, reference)
        logger.info(f"{label}: max-norm error {result.errors[label]:.4g}, "
                    f"TV nonincreasing: {trace.tv_nonincreasing()}")
    return result


def run_square_wave(cfl: float, n: int = 128, t_end: float = 1.0, r: float = DEFAULT_FAMILY_R,
                    methods: Optional[Sequence[str]] = None, spatial: SpatialScheme = SpatialScheme.FIRST,
                    settings: Optional[NewtonSettings] = None, jobs: int = 1) -> ExperimentResult:
    """Advect ``1 - H(x - 1/2)`` once around the unit interval with each method."""
    spec = ExperimentSpec.for_problem(Problem.ADVECTION_SQUARE, n=n, cfl=cfl, t_end=t_end, r=r,
                                      methods=tuple(methods) if methods else None, spatial=spatial)
    return run_experiment(spec, settings=settings, jobs=jobs)


# ---------------------------------------------------------------------------
# Convergence
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    errors: Dict[str, float]
    orders: Dict[str, Optional[float]]


def observed_orders(sizes: Sequence[int], errors: Sequence[float]) -> List[Optional[float]]:
    """``log(e_prev / e) / log(n / n_prev)``; ``None`` on the first row."""
    orders: List[Optional[float]] = [None]
    for (n0, e0), (n1, e1) in zip(zip(sizes, errors), zip(sizes[1:], errors[1:])):
        if e0 > 0.0 and e1 > 0.0:
            orders.append(math.log(e0 / e1) / math.log(n1 / n0))
        else:
            orders.append(None)
    return orders


def convergence_rows(sizes: Sequence[int], errors: Dict[str, Sequence[float]]) -> List[ConvergenceRow]:
    orders = {label: observed_orders(sizes, errs) for label, errs in errors.items()}
    return [
        ConvergenceRow(n=n, errors={label: float(errs[i]) for label, errs in errors.items()},
                       orders={label: orders[label][i] for label in errors})
        for i, n in enumerate(sizes)
    ]


def convergence_frame(rows: Sequence[ConvergenceRow]) -> pd.DataFrame:
    """One row per grid: ``n`` then ``<method>_error, <method>_order`` per method."""
    records = []
    for row in rows:
        record = {"n": row.n}
        for label in row.errors:
            record[f"{label}_error"] = row.errors[label]
            order = row.orders[label]
            record[f"{label}_order"] = np.nan if order is None else order
        records.append(record)
    return pd.DataFrame.from_records(records)


def run_convergence_table(cfl: float = 8.0, sizes: Sequence[int] = (32, 64, 128, 256),
                          r: float = DEFAULT_FAMILY_R, methods: Optional[Sequence[str]] = None,
                          spatial: SpatialScheme = SpatialScheme.WENO5, t_end: float = 1.0,
                          settings: Optional[NewtonSettings] = None, jobs: int = 1) -> List[ConvergenceRow]:
    """Max-norm errors of sine-wave advection after one period, per grid and method."""
    spec = ExperimentSpec.for_problem(Problem.ADVECTION_SINE, cfl=cfl, sizes=tuple(sizes), r=r,
                                      methods=tuple(methods) if methods else None,
                                      spatial=spatial, t_end=t_end)
    return run_experiment(spec, settings=settings, jobs=jobs).table


# ---------------------------------------------------------------------------
# Burgers
# ---------------------------------------------------------------------------

def run_burgers(cfl: float = 6.5, n: int = 512, second_cfl: Optional[float] = None,
                r: float = DEFAULT_FAMILY_R, methods: Optional[Sequence[str]] = None,
                settings: Optional[NewtonSettings] = None, jobs: int = 1,
                splitting: Optional[FluxSplitting] = None) -> ExperimentResult:
    """Burgers with ``sin(2 pi x)`` to ``t = 0.16``, plus the family at a second CFL.

    The second CFL defaults to half of *cfl*; the splitting defaults to
    ``DWSSP_BURGERS_SPLITTING``.
    """
    spec = ExperimentSpec.for_problem(Problem.BURGERS, n=n, cfl=cfl, r=r,
                                      methods=tuple(methods) if methods else None, splitting=splitting,
                                      second_cfl=second_cfl if second_cfl is not None else cfl / 2.0)
    return run_experiment(spec, settings=settings, jobs=jobs)


def run_experiment(spec: ExperimentSpec, settings: Optional[NewtonSettings] = None,
                   jobs: int = 1) -> ExperimentResult:
    if spec.is_convergence_study:
        return _run_convergence(spec, settings, jobs)
    labels = [(name, name, spec.cfl) for name in spec.methods]
    if spec.second_cfl is not None:
        family = spec.family_method
        labels.append((f"{family}@cfl{spec.second_cfl:g}", family, spec.second_cfl))
    logger.info(f"Experiment {spec.problem.value}: n={spec.n}, cfl={spec.cfl:g}, "
                f"methods={', '.join(spec.methods)}")
    outputs = _run_methods(spec, spec.n, labels, settings, jobs)
    return _collect(spec, outputs, reference_solution(spec.problem, spec.n, spec.t_end, spec.splitting))


def _run_convergence(spec: ExperimentSpec, settings: Optional[NewtonSettings], jobs: int) -> ExperimentResult:
    errors: Dict[str, List[float]] = {name: [] for name in spec.methods}
    finest = None
    for n in spec.sizes:
        outputs = _run_methods(spec, n, [(name, name, spec.cfl) for name in spec.methods], settings, jobs)
        reference = reference_solution(spec.problem, n, spec.t_end, spec.splitting)
        finest = _collect(spec, outputs, reference)
        for name in spec.methods:
            errors[name].append(finest.errors[name])
        logger.info(f"n={n}: " + ", ".join(f"{name} {errors[name][-1]:.3e}" for name in spec.methods))
    finest.table = convergence_rows(spec.sizes, errors)
    return finest


# ---------------------------------------------------------------------------
# Dissipation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DissipationEstimate:
    """``magnitude = r dx^q dt``; ``ratio`` compares it with the ``dt^2`` term."""
    magnitude: float
    ratio: float
    polluted: bool


def dissipation_probe(r: float, q: float, dx: float, dt: float) -> DissipationEstimate:
    """Size of the diffusive term a downwind method adds through a q-th order
    spatial operator pair, relative to the method's second-order error.

    ``ratio >= 1`` means first-order pollution is at least as large as the
    time-discretization error. ``q = inf`` stands for exact spatial operators.
    """
    for name, value in (("r", r), ("dx", dx), ("dt", dt)):
        if not (math.isfinite(value) and value > 0.0):
            raise DwsspValidationError(f"{name} must be positive and finite, got {value}")
    if not q > 0:
        raise DwsspValidationError(f"q must be positive, got {q}")
    magnitude = r * dx ** q * dt
    ratio = magnitude / dt ** 2
    return DissipationEstimate(magnitude=magnitude, ratio=ratio,
                               polluted=ratio >= DISSIPATION_POLLUTION_RATIO)
