"""
Rational stability functions of the underlying Runge-Kutta method.

``psi(z) = det(I - z A' + z 1 b'^T) / det(I - z A')``, with both determinants
expanded exactly by cofactors over polynomials in ``z``.
"""
from dataclasses import dataclass
from typing import List, Union

import numpy as np
from numpy.polynomial import Polynomial

from ..config import CONSISTENCY_TOL, MAX_STABILITY_STAGES, POLE_RTOL
from ..exceptions import DwsspValidationError, PoleError
from ..utils import Utils
from .family import underlying_method
from .tableau import DownwindTableau

ComplexLike = Union[complex, float, np.ndarray]


@dataclass(frozen=True, eq=False)
class RationalStabilityFunction:
    """``numerator(z) / denominator(z)``, coefficients in ascending powers."""
    numerator: np.ndarray
    denominator: np.ndarray

    def __post_init__(self):
        for name in ("numerator", "denominator"):
            try:
                arr = Utils.readonly(np.trim_zeros(np.asarray(getattr(self, name), dtype=float), "b"),
                                     ndim=1, field=name)
            except ValueError as exc:
                raise DwsspValidationError(str(exc)) from exc
            if arr.size == 0:
                arr = Utils.readonly([0.0], ndim=1, field=name)
            object.__setattr__(self, name, arr)
        d0 = self.denominator[0]
        if d0 == 0.0 or abs(self.numerator[0] / d0 - 1.0) > CONSISTENCY_TOL:
            raise DwsspValidationError("stability function must satisfy psi(0) = 1")

    @property
    def num(self) -> Polynomial:
        return Polynomial(self.numerator)

    @property
    def den(self) -> Polynomial:
        return Polynomial(self.denominator)

    def normalized(self) -> 'RationalStabilityFunction':
        """Scale so that ``denominator[0] == 1``."""
        d0 = self.denominator[0]
        return RationalStabilityFunction(self.numerator / d0, self.denominator / d0)

    def to_dict(self) -> dict:
        return {
            "numerator": Utils.to_nested_list(self.numerator),
            "denominator": Utils.to_nested_list(self.denominator),
        }

    def __str__(self) -> str:
        return f"({_format_poly(self.numerator)}) / ({_format_poly(self.denominator)})"


def _format_poly(coef: np.ndarray) -> str:
    terms = []
    for power, a in enumerate(coef):
        if a == 0.0:
            continue
        mono = "" if power == 0 else ("z" if power == 1 else f"z^{power}")
        if mono and a == 1.0:
            terms.append(mono)
        else:
            terms.append(f"{a:.10g}{'*' + mono if mono else ''}")
    return " + ".join(terms) if terms else "0"


def _poly_det(M: List[List[Polynomial]]) -> Polynomial:
    n = len(M)
    if n == 1:
        return M[0][0]
    total = Polynomial([0.0])
    for col in range(n):
        entry = M[0][col]
        if not np.any(entry.coef):
            continue
        minor = [row[:col] + row[col + 1:] for row in M[1:]]
        sign = 1.0 if col % 2 == 0 else -1.0
        total = total + sign * entry * _poly_det(minor)
    return total


def _linear_poly_matrix(const: np.ndarray, lin: np.ndarray) -> List[List[Polynomial]]:
    """Entries ``const[i, j] + lin[i, j] * z``."""
    n = const.shape[0]
    return [[Polynomial([const[i, j], lin[i, j]]) for j in range(n)] for i in range(n)]


def _drop_roundoff(coef: np.ndarray) -> np.ndarray:
    coef = np.array(coef, dtype=float)
    coef[np.abs(coef) < POLE_RTOL * np.abs(coef).max()] = 0.0
    return coef


def stability_function(t: DownwindTableau) -> RationalStabilityFunction:
    """Stability function of ``underlying_method(t)`` as a ratio of polynomials."""
    if t.s > MAX_STABILITY_STAGES:
        raise DwsspValidationError(
            f"stability functions are expanded for at most {MAX_STABILITY_STAGES} stages, got {t.s}"
        )
    u = underlying_method(t)
    s = u.s
    eye = np.eye(s)
    den = _poly_det(_linear_poly_matrix(eye, -u.A))
    num = _poly_det(_linear_poly_matrix(eye, -u.A + np.outer(np.ones(s), u.b)))
    return RationalStabilityFunction(_drop_roundoff(num.coef), _drop_roundoff(den.coef))


def evaluate_psi(f: RationalStabilityFunction, z: ComplexLike) -> ComplexLike:
    """Evaluate ``f`` at a point or an array of points.

    Raises:
        PoleError: If ``|denominator(z)|`` is below ``POLE_RTOL`` times the
            largest denominator coefficient.
    """
    zz = np.asarray(z, dtype=complex)
    den = np.polynomial.polynomial.polyval(zz, f.denominator)
    scale = np.abs(f.denominator).max()
    bad = np.abs(den) < POLE_RTOL * scale
    if np.any(bad):
        where = zz[bad].ravel()[0] if zz.ndim else zz
        raise PoleError(f"stability function has a pole at z={complex(where)}")
    value = np.polynomial.polynomial.polyval(zz, f.numerator) / den
    return complex(value) if np.ndim(z) == 0 else value


def psi_at_infinity(f: RationalStabilityFunction) -> float:
    """``lim |psi(z)|`` as ``|z| -> infinity``."""
    n_deg, d_deg = len(f.numerator) - 1, len(f.denominator) - 1
    if n_deg > d_deg:
        return float("inf")
    if n_deg < d_deg:
        return 0.0
    return float(abs(f.numerator[-1] / f.denominator[-1]))


def a_stability_sample(f: RationalStabilityFunction, y_max: float = 1e4,
                       samples: int = 100_001) -> float:
    """Largest ``|psi(iy)|`` over ``samples`` evenly spaced ``y`` in ``[-y_max, y_max]``."""
    y = np.linspace(-y_max, y_max, samples)
    return float(np.abs(evaluate_psi(f, 1j * y)).max())
