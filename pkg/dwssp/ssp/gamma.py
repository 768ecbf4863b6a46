"""
Expansion of the linear one-step map of an explicit representation in
products of forward-Euler factors ``w = 1 + z/r`` and ``wt = 1 + zt/r``.
"""
from dataclasses import dataclass

import numpy as np

from ..config import CONSISTENCY_TOL
from ..exceptions import NegativeGammaError, NotExplicitError
from ..methods.tableau import ShuOsherRep
from ..utils import Utils


@dataclass(frozen=True, eq=False)
class GammaExpansion:
    """``gamma[j, l]`` weighs ``w**(j - l) * wt**l`` for ``0 <= l <= j <= s``."""
    s: int
    r: float
    gamma: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "gamma", Utils.readonly(self.gamma, ndim=2, field="gamma"))

    def total(self) -> float:
        return float(self.gamma.sum())

    def evaluate(self, z: complex, zt: complex) -> complex:
        w, wt = 1.0 + z / self.r, 1.0 + zt / self.r
        j, l = np.tril_indices(self.s + 1)
        return complex(np.sum(self.gamma[j, l] * w ** (j - l) * wt ** l))


def amplification_gamma(rep: ShuOsherRep) -> GammaExpansion:
    """Forward substitution of the stages as polynomials in ``(w, wt)``.

    Raises:
        NotExplicitError: If any stage depends on itself or a later stage.
    """
    if not rep.is_explicit:
        raise NotExplicitError("gamma expansion needs an explicit representation")
    s = rep.s
    # coef[i][a, b] is the coefficient of w**a * wt**b in y_i
    coef = []
    for i in range(s + 1):
        poly = np.zeros((s + 1, s + 1))
        poly[0, 0] = rep.v[i]
        for j in range(min(i, s)):
            if rep.P[i, j]:
                poly[1:, :] += rep.P[i, j] * coef[j][:-1, :]
            if rep.Ptilde[i, j]:
                poly[:, 1:] += rep.Ptilde[i, j] * coef[j][:, :-1]
        coef.append(poly)
    final = coef[s]
    gamma = np.zeros((s + 1, s + 1))
    for j in range(s + 1):
        for l in range(j + 1):
            gamma[j, l] = final[j - l, l]
    return GammaExpansion(s=s, r=rep.r, gamma=gamma)


def verify_stage_bound(g: GammaExpansion) -> float:
    """``sum gamma[j, l] * (j - 2l)``; equals ``r`` for first-order methods.

    Raises:
        NegativeGammaError: If any weight is below ``-1e-12``.
    """
    if g.gamma.min() < -CONSISTENCY_TOL:
        raise NegativeGammaError(f"gamma has a negative weight {g.gamma.min():.3e}")
    j, l = np.indices(g.gamma.shape)
    return float(np.sum(g.gamma * (j - 2 * l)))
