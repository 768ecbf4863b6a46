"""
Value types for downwind Runge-Kutta and linear multistep methods.

All arrays are float64 and read-only after construction, so instances can be
shared freely between threads.
"""
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import CONSISTENCY_TOL
from ..exceptions import DwsspValidationError
from ..utils import Utils


def _freeze(obj, name: str, values, ndim: int) -> np.ndarray:
    try:
        arr = Utils.readonly(values, ndim=ndim, field=name)
    except ValueError as exc:
        raise DwsspValidationError(str(exc)) from exc
    object.__setattr__(obj, name, arr)
    return arr


# ---------------------------------------------------------------------------
# Runge-Kutta methods
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DownwindTableau:
    """Butcher-style coefficients of a downwind Runge-Kutta method.

    Stage ``i`` reads
    ``y_i = u + dt * sum_j (A[i, j] F(y_j) + Atilde[i, j] Ftilde(y_j))`` and
    the update uses ``b``/``btilde`` the same way. ``c`` defaults to the row
    sums of ``A - Atilde``.
    """
    A: np.ndarray
    Atilde: np.ndarray
    b: np.ndarray
    btilde: np.ndarray
    c: Optional[np.ndarray] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        A = _freeze(self, "A", self.A, 2)
        s = A.shape[0]
        if s < 1 or A.shape != (s, s):
            raise DwsspValidationError(f"A must be a non-empty square matrix, got shape {A.shape}")
        Atilde = _freeze(self, "Atilde", self.Atilde, 2)
        if Atilde.shape != (s, s):
            raise DwsspValidationError(f"Atilde must have shape {(s, s)}, got {Atilde.shape}")
        for name in ("b", "btilde"):
            vec = _freeze(self, name, getattr(self, name), 1)
            if vec.shape != (s,):
                raise DwsspValidationError(f"{name} must have length {s}, got {vec.shape[0]}")
        implied = (A - Atilde).sum(axis=1)
        if self.c is None:
            _freeze(self, "c", implied, 1)
        else:
            c = _freeze(self, "c", self.c, 1)
            if c.shape != (s,):
                raise DwsspValidationError(f"c must have length {s}, got {c.shape[0]}")
            if not np.allclose(c, implied, rtol=0.0, atol=1e-10 * max(1.0, np.abs(implied).max())):
                raise DwsspValidationError(
                    f"c must equal the row sums of A - Atilde ({implied.tolist()}), got {c.tolist()}"
                )

    @property
    def s(self) -> int:
        return self.A.shape[0]

    @property
    def is_explicit(self) -> bool:
        """True iff a_ij = atilde_ij = 0 for all j >= i."""
        upper = np.triu_indices(self.s)
        return bool(np.all(self.A[upper] == 0.0) and np.all(self.Atilde[upper] == 0.0))

    @property
    def has_downwind(self) -> bool:
        return bool(np.any(self.Atilde != 0.0) or np.any(self.btilde != 0.0))

    def to_dict(self) -> dict:
        d = {
            "s": self.s,
            "A": Utils.to_nested_list(self.A),
            "Atilde": Utils.to_nested_list(self.Atilde),
            "b": Utils.to_nested_list(self.b),
            "btilde": Utils.to_nested_list(self.btilde),
            "c": Utils.to_nested_list(self.c),
        }
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, data: dict) -> 'DownwindTableau':
        s = int(data["s"])
        zeros = [[0.0] * s for _ in range(s)]
        tableau = cls(
            A=data["A"],
            Atilde=data.get("Atilde", zeros),
            b=data["b"],
            btilde=data.get("btilde", [0.0] * s),
            c=data.get("c"),
            name=data.get("name", ""),
        )
        if tableau.s != s:
            raise DwsspValidationError(f"declared s={s} but A has {tableau.s} rows")
        return tableau


@dataclass(frozen=True, eq=False)
class ShuOsherRep:
    """Convex-combination representation ``(v, P, Ptilde)`` at parameter ``r``.

    Row ``i`` (``i < s``) gives stage ``i``; row ``s`` gives the update:
    ``y_i = v_i u + sum_j P[i, j] (y_j + dt/r F(y_j)) + Ptilde[i, j] (y_j + dt/r Ftilde(y_j))``.
    """
    r: float
    v: np.ndarray
    P: np.ndarray
    Ptilde: np.ndarray

    def __post_init__(self):
        r = float(self.r)
        if not np.isfinite(r) or r < 0.0:
            raise DwsspValidationError(f"r must be a finite nonnegative number, got {self.r}")
        object.__setattr__(self, "r", r)
        P = _freeze(self, "P", self.P, 2)
        rows, s = P.shape
        if s < 1 or rows != s + 1:
            raise DwsspValidationError(f"P must have shape (s+1, s), got {P.shape}")
        Ptilde = _freeze(self, "Ptilde", self.Ptilde, 2)
        if Ptilde.shape != P.shape:
            raise DwsspValidationError(f"Ptilde must have shape {P.shape}, got {Ptilde.shape}")
        v = _freeze(self, "v", self.v, 1)
        if v.shape != (s + 1,):
            raise DwsspValidationError(f"v must have length {s + 1}, got {v.shape[0]}")
        residual = self.consistency_residual()
        if residual > CONSISTENCY_TOL:
            raise DwsspValidationError(
                f"rows of (v, P, Ptilde) must sum to 1; largest deviation {residual:.3e}"
            )

    @property
    def s(self) -> int:
        return self.P.shape[1]

    def consistency_residual(self) -> float:
        sums = self.v + self.P.sum(axis=1) + self.Ptilde.sum(axis=1)
        return float(np.abs(sums - 1.0).max())

    def min_entry(self) -> float:
        return float(min(self.v.min(), self.P.min(), self.Ptilde.min()))

    def is_certificate(self, tol: float = CONSISTENCY_TOL) -> bool:
        """All coefficients nonnegative up to ``-tol``."""
        return self.min_entry() >= -tol

    @property
    def is_explicit(self) -> bool:
        stage_rows = np.triu_indices(self.s)
        return bool(
            np.all(self.P[:-1][stage_rows] == 0.0)
            and np.all(self.Ptilde[:-1][stage_rows] == 0.0)
        )

    def to_dict(self) -> dict:
        return {
            "s": self.s,
            "r": self.r,
            "v": Utils.to_nested_list(self.v),
            "P": Utils.to_nested_list(self.P),
            "Ptilde": Utils.to_nested_list(self.Ptilde),
        }

    @classmethod
    def from_dict(cls, data: dict) -> 'ShuOsherRep':
        return cls(r=data["r"], v=data["v"], P=data["P"], Ptilde=data["Ptilde"])


# ---------------------------------------------------------------------------
# Linear multistep methods
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class DownwindLmm:
    """k-step method
    ``u_n = sum_{j<k} alpha_j u_{n-k+j} + dt sum_{j<=k} (beta_j F_{n-k+j} + betatilde_j Ftilde_{n-k+j})``.
    """
    alpha: np.ndarray
    beta: np.ndarray
    betatilde: np.ndarray
    name: str = field(default="", compare=False)

    def __post_init__(self):
        alpha = _freeze(self, "alpha", self.alpha, 1)
        k = alpha.shape[0]
        if k < 1:
            raise DwsspValidationError("alpha must contain at least one coefficient")
        for name in ("beta", "betatilde"):
            vec = _freeze(self, name, getattr(self, name), 1)
            if vec.shape != (k + 1,):
                raise DwsspValidationError(f"{name} must have length k+1={k + 1}, got {vec.shape[0]}")

    @property
    def k(self) -> int:
        return self.alpha.shape[0]

    @property
    def is_explicit(self) -> bool:
        return bool(self.beta[-1] == 0.0 and self.betatilde[-1] == 0.0)

    def to_dict(self) -> dict:
        d = {
            "k": self.k,
            "alpha": Utils.to_nested_list(self.alpha),
            "beta": Utils.to_nested_list(self.beta),
            "betatilde": Utils.to_nested_list(self.betatilde),
        }
        if self.name:
            d["name"] = self.name
        return d

    @classmethod
    def from_dict(cls, data: dict) -> 'DownwindLmm':
        k = int(data["k"])
        m = cls(
            alpha=data["alpha"],
            beta=data["beta"],
            betatilde=data.get("betatilde", [0.0] * (k + 1)),
            name=data.get("name", ""),
        )
        if m.k != k:
            raise DwsspValidationError(f"declared k={k} but alpha has {m.k} entries")
        return m
