"""Recover SIR rates from coarse observables.

The reproduction number comes from the final-size relation

    ln(S_inf / S0) = -R0 (N - S_inf - R(0)) / N

and the recovery rate from the early exponential phase, where I grows by a
factor ``early_growth`` per week, i.e. ``beta - gamma = ln(early_growth)``.
All quantities are population fractions (N = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import bisect

from .core import EpidemicParams
from .errors import NoRoot, ValidationError

R0_BRACKET = (1.0, 100.0)
BISECT_XTOL = 1e-10
# Initial removed fractions below this are roundoff from 1 - s0 - i0.
_NEGLIGIBLE = 1e-12


@dataclass(frozen=True)
class CalibrationTargets:
    """Observable epidemic summaries, as fractions of the population.

    ``s_inf`` is the susceptible fraction left once the epidemic is over,
    ``s0`` and ``i0`` the initial susceptible and infected fractions (the
    remainder ``1 - s0 - i0`` starts out removed), and ``early_growth`` the
    weekly multiplication factor of I while nearly everyone is susceptible.
    """

    s_inf: float
    s0: float
    i0: float
    early_growth: float

    def __post_init__(self):
        if not 0 < self.s_inf < self.s0 <= 1:
            raise ValidationError(f"need 0 < s_inf < s0 <= 1, got s_inf={self.s_inf!r}, s0={self.s0!r}")
        if not (self.i0 > 0 and self.s0 + self.i0 <= 1 + 1e-12):
            raise ValidationError(f"need i0 > 0 and s0 + i0 <= 1, got s0={self.s0!r}, i0={self.i0!r}")
        if not (math.isfinite(self.early_growth) and self.early_growth > 1):
            raise ValidationError(f"early_growth must be > 1 for a growing epidemic, got {self.early_growth!r}")

    @property
    def removed0(self) -> float:
        return max(0.0, 1.0 - self.s0 - self.i0)


def _final_size_residual(r0, targets):
    return math.log(targets.s_inf / targets.s0) + r0 * (1.0 - targets.s_inf - targets.removed0)


def r0_from_final_size(targets: CalibrationTargets) -> float:
    """Reproduction number implied by the final susceptible fraction.

    Closed form when nobody starts removed; otherwise bisection on the
    final-size relation over (1, 100] to 1e-10.
    """
    lo, hi = R0_BRACKET
    if targets.removed0 < _NEGLIGIBLE:
        r0 = -math.log(targets.s_inf / targets.s0) / (1.0 - targets.s_inf)
        if not lo < r0 <= hi:
            raise NoRoot(f"final-size R0 = {r0:.6g} lies outside ({lo}, {hi}]")
        return r0
    f_lo, f_hi = _final_size_residual(lo, targets), _final_size_residual(hi, targets)
    if f_lo * f_hi > 0:
        raise NoRoot(f"final-size relation has no root for R0 in ({lo}, {hi}]")
    return bisect(_final_size_residual, lo, hi, args=(targets,), xtol=BISECT_XTOL)


def fit_beta_gamma(targets: CalibrationTargets) -> tuple[float, float]:
    """``(beta, gamma)`` matching both the final size and the early growth factor."""
    r0 = r0_from_final_size(targets)
    gamma = math.log(targets.early_growth) / (r0 - 1.0)
    return r0 * gamma, gamma


def calibrated_params(targets: CalibrationTargets, n_pop: float = 1.0) -> EpidemicParams:
    """Epidemic parameters for the fitted rates, scaling the targets' fractions by ``n_pop``."""
    beta, gamma = fit_beta_gamma(targets)
    removed0 = targets.removed0 if targets.removed0 >= _NEGLIGIBLE else 0.0
    s0 = 1.0 - targets.i0 - removed0
    return EpidemicParams(
        beta=beta, gamma=gamma, n_pop=n_pop, s0=s0 * n_pop, i0=targets.i0 * n_pop, r0=removed0 * n_pop
    )
