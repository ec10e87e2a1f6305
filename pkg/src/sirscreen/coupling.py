"""Screening analytics along an epidemic trajectory.

Turns a :class:`~sirscreen.core.Trajectory` (or any prevalence time series)
into a per-sample table of PPV, zeta relative to a baseline prevalence, and
the number of serial positive tests needed to reach the threshold PPV.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import screening
from .core import TestCharacteristics, Trajectory
from .errors import InvalidBaseline, NotReachable, ValidationError
from .screening import SerialTestPolicy


class PrevalenceSource(str, enum.Enum):
    """Where the prevalence fed to the PPV formula comes from.

    ``INFECTED_FRACTION`` uses I(t)/N. ``INCIDENCE_RATE`` plugs the rate
    dI/dt (per N, clamped to [0, 1]) into the PPV formula instead; it is
    zero from the epidemic peak onward.
    """

    INFECTED_FRACTION = "infected"
    INCIDENCE_RATE = "incidence"


class Baseline(str, enum.Enum):
    PEAK = "peak"
    FIRST = "first"


BaselineSpec = Union[Baseline, str, float]


@dataclass(frozen=True, eq=False)
class ScreeningSeries:
    """Column-wise screening table aligned with the input samples.

    ``n_iter`` holds 0 on rows where no number of tests up to ``n_max``
    reaches the target (for example zero prevalence).
    """

    t: np.ndarray
    phi: np.ndarray
    pt: float
    ppv: np.ndarray
    zeta: np.ndarray
    n_iter: np.ndarray
    baseline_phi0: float

    def __len__(self):
        return self.t.size

    @property
    def pt_column(self) -> np.ndarray:
        return np.full(self.t.shape, self.pt)

    def rows(self):
        """Iterate ``(t, phi, pt, ppv, zeta, n_iter)`` tuples."""
        for k in range(len(self)):
            yield (
                float(self.t[k]),
                float(self.phi[k]),
                self.pt,
                float(self.ppv[k]),
                float(self.zeta[k]),
                int(self.n_iter[k]),
            )


def incidence_prevalence(s_frac, i_frac, beta: float, gamma: float) -> np.ndarray:
    """dI/dt per capita, ``beta i s - gamma i`` on fractions, clamped to [0, 1]."""
    s_frac = np.asarray(s_frac, dtype=float)
    i_frac = np.asarray(i_frac, dtype=float)
    return np.clip(beta * i_frac * s_frac - gamma * i_frac, 0.0, 1.0)


def prevalence_series(
    traj: Trajectory, source: PrevalenceSource = PrevalenceSource.INFECTED_FRACTION
) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(t, phi)`` for every sample of ``traj``."""
    source = PrevalenceSource(source)
    n = traj.params.n_pop
    i_frac = traj.i / n
    if source is PrevalenceSource.INFECTED_FRACTION:
        phi = np.clip(i_frac, 0.0, 1.0)
    else:
        phi = incidence_prevalence(traj.s / n, i_frac, traj.params.beta, traj.params.gamma)
    return traj.t.copy(), phi


def resolve_baseline(phi: np.ndarray, baseline: BaselineSpec) -> float:
    """Pick phi0 from the series: its maximum, its first value, or an explicit number."""
    if isinstance(baseline, str):
        try:
            baseline = Baseline(baseline)
        except ValueError:
            raise ValidationError(f"unknown baseline {baseline!r}; use 'peak', 'first' or a number") from None
    if baseline is Baseline.PEAK:
        phi0 = float(np.max(phi))
    elif baseline is Baseline.FIRST:
        phi0 = float(phi[0])
    else:
        phi0 = float(baseline)
        if not 0.0 <= phi0 <= 1.0:
            raise ValidationError(f"explicit baseline prevalence must be in [0, 1], got {phi0!r}")
    if phi0 == 0:
        raise InvalidBaseline("baseline prevalence resolves to 0; zeta is undefined")
    return phi0


def analyze_prevalence(
    t,
    phi,
    test: TestCharacteristics,
    baseline: BaselineSpec = Baseline.PEAK,
    policy: SerialTestPolicy = SerialTestPolicy(),
) -> ScreeningSeries:
    """Screening table for an arbitrary prevalence series."""
    t = np.asarray(t, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if t.ndim != 1 or t.size == 0 or phi.shape != t.shape:
        raise ValidationError("t and phi must be non-empty 1-D arrays of equal length")
    if np.any(np.diff(t) <= 0):
        raise ValidationError("times must be strictly increasing")
    if not np.all((phi >= 0) & (phi <= 1)):
        raise ValidationError("prevalence values must lie in [0, 1]")

    phi0 = resolve_baseline(phi, baseline)
    pt = screening.prevalence_threshold(test)
    ppv = np.array([screening.ppv(test, x) for x in phi])
    zeta = np.array([screening.zeta(test, phi0, x) for x in phi])
    n_iter = np.zeros(t.size, dtype=int)
    for k, x in enumerate(phi):
        try:
            n_iter[k] = screening.iterations_to_overcome(test, x, policy)
        except NotReachable:
            n_iter[k] = 0
    return ScreeningSeries(t=t, phi=phi, pt=pt, ppv=ppv, zeta=zeta, n_iter=n_iter, baseline_phi0=phi0)


def analyze(
    traj: Trajectory,
    test: TestCharacteristics,
    source: PrevalenceSource = PrevalenceSource.INFECTED_FRACTION,
    baseline: BaselineSpec = Baseline.PEAK,
    policy: SerialTestPolicy = SerialTestPolicy(),
) -> ScreeningSeries:
    """PPV, zeta and serial-test counts for every sample of ``traj``.

    With the default peak baseline, zeta is 1 at the sample of maximal
    prevalence and below 1 everywhere else.
    """
    t, phi = prevalence_series(traj, source)
    return analyze_prevalence(t, phi, test, baseline, policy)


def crossings(t, phi, level: float) -> tuple[list[float], list[float]]:
    """Sample times at which ``phi`` crosses ``level`` upward and downward.

    A crossing between samples k and k+1 is reported at ``t[k]``, the last
    sample before the series changes side.
    """
    t = np.asarray(t, dtype=float)
    above = np.asarray(phi, dtype=float) > level
    up = [float(t[k]) for k in range(t.size - 1) if not above[k] and above[k + 1]]
    down = [float(t[k]) for k in range(t.size - 1) if above[k] and not above[k + 1]]
    return up, down
