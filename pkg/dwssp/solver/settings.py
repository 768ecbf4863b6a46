"""
Solver settings, per-run step context and the monotonicity trace.
"""
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..config import (CSV_FLOAT_FORMAT, GMRES_MAX_CYCLES, GMRES_RESTART, KRYLOV_TOL,
                      NEWTON_ABS_TOL, NEWTON_MAX_ITER, NEWTON_REL_TOL, PRECONDITION_MAX_SIZE)
from ..exceptions import DwsspValidationError
from ..methods.tableau import DownwindLmm, DownwindTableau
from ..spatial.semidiscretization import SemiDiscretization
from ..utils import Utils


class JacobianMode(str, Enum):
    FINITE_DIFFERENCE = "finite-difference-matvec"
    ASSEMBLED_LINEAR = "assembled-linear"


@dataclass(frozen=True)
class NewtonSettings:
    abs_tol: float = NEWTON_ABS_TOL
    rel_tol: float = NEWTON_REL_TOL
    max_newton: int = NEWTON_MAX_ITER
    krylov_restart: int = GMRES_RESTART
    krylov_tol: float = KRYLOV_TOL
    krylov_max_cycles: int = GMRES_MAX_CYCLES
    jacobian_mode: JacobianMode = JacobianMode.ASSEMBLED_LINEAR
    precondition_max_size: int = PRECONDITION_MAX_SIZE

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "krylov_tol"):
            if not getattr(self, name) > 0.0:
                raise DwsspValidationError(f"{name} must be positive, got {getattr(self, name)}")
        if int(self.precondition_max_size) < 0:
            raise DwsspValidationError(
                f"precondition_max_size must be nonnegative, got {self.precondition_max_size}")
        for name in ("max_newton", "krylov_restart", "krylov_max_cycles"):
            if int(getattr(self, name)) < 1:
                raise DwsspValidationError(f"{name} must be at least 1, got {getattr(self, name)}")
        object.__setattr__(self, "jacobian_mode", JacobianMode(self.jacobian_mode))

    def to_dict(self) -> dict:
        return {
            "abs_tol": self.abs_tol,
            "rel_tol": self.rel_tol,
            "max_newton": self.max_newton,
            "krylov_restart": self.krylov_restart,
            "krylov_tol": self.krylov_tol,
            "krylov_max_cycles": self.krylov_max_cycles,
            "jacobian_mode": self.jacobian_mode.value,
            "precondition_max_size": self.precondition_max_size,
        }


Method = Union[DownwindTableau, DownwindLmm]


@dataclass
class StepContext:
    """Everything a single step needs; the LU cache is private to one run."""
    method: Method
    semi: SemiDiscretization
    dt: float
    newton: NewtonSettings = field(default_factory=NewtonSettings)
    _lu_cache: Dict[Tuple[str, float], tuple] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not (np.isfinite(self.dt) and self.dt > 0.0):
            raise DwsspValidationError(f"time step must be positive, got {self.dt}")

    @property
    def uses_assembled_matrices(self) -> bool:
        return self.semi.linear and self.newton.jacobian_mode is JacobianMode.ASSEMBLED_LINEAR


@dataclass(frozen=True)
class StepStats:
    newton_iterations: int = 0
    residual: float = 0.0


# ---------------------------------------------------------------------------
# Monitor trace
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MonitorRecord:
    step: int
    t: float
    tv: float
    maxnorm: float
    newton_iters: int = 0
    residual: float = 0.0


TRACE_COLUMNS = ["step", "t", "tv", "maxnorm", "newton_iters", "residual"]


class MonitorTrace:
    """Per-step total variation and max norm of a run, with solver effort."""

    def __init__(self, label: str = ""):
        self.label = label
        self._records: List[MonitorRecord] = []

    def append(self, record: MonitorRecord) -> None:
        if self._records and not record.t > self._records[-1].t:
            raise DwsspValidationError(
                f"trace times must increase: {record.t} after {self._records[-1].t}"
            )
        self._records.append(record)

    @property
    def records(self) -> List[MonitorRecord]:
        return list(self._records)

    def __len__(self) -> int:
        return len(self._records)

    def column(self, name: str) -> np.ndarray:
        return np.array([getattr(rec, name) for rec in self._records], dtype=float)

    def max_tv_increase(self) -> float:
        """Largest stepwise increase of total variation (negative if always decreasing)."""
        tv = self.column("tv")
        if tv.size < 2:
            return 0.0
        return float(np.diff(tv).max())

    def tv_nonincreasing(self, tol: float = 1e-10) -> bool:
        return self.max_tv_increase() <= tol

    def max_norm_peak(self) -> float:
        return float(self.column("maxnorm").max()) if self._records else 0.0

    def total_newton_iterations(self) -> int:
        return int(self.column("newton_iters").sum()) if self._records else 0

    def to_frame(self) -> pd.DataFrame:
        frame = pd.DataFrame([asdict(rec) for rec in self._records], columns=TRACE_COLUMNS)
        return frame.astype({"step": int, "newton_iters": int})

    def to_csv(self, path: Optional[str] = None) -> str:
        text = self.to_frame().to_csv(index=False, float_format=CSV_FLOAT_FORMAT,
                                      lineterminator="\n")
        if path is not None:
            Utils.atomic_write_text(path, text)
        return text
