"""Fixed-step integration of the Kermack-McKendrick SIR system.

    dS/dt = -beta I S / N
    dI/dt =  beta I S / N - gamma I
    dR/dt =  gamma I
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .core import CONSERVATION_RTOL, EpidemicParams, SirState, Trajectory, r_naught
from .errors import NonFiniteState, ValidationError

# Negative compartments above this (times N) are treated as roundoff and clamped.
NEGATIVE_CLAMP = 1e-12


class Method(str, enum.Enum):
    RK4 = "rk4"
    EULER = "euler"


@dataclass(frozen=True)
class IntegrationConfig:
    """Step size, horizon and output grid for :func:`integrate` (all in weeks).

    Samples are emitted at ``k * sample_every`` for every integer ``k >= 0``
    with ``k * sample_every <= t_end``. Each sampling interval is split into
    ``ceil(sample_every / dt)`` equal steps, so the effective step never
    exceeds ``dt`` and sample times carry no accumulated drift.
    """

    dt: float = 0.01
    t_end: float = 34.0
    sample_every: float = 1.0
    method: Method = Method.RK4

    def __post_init__(self):
        object.__setattr__(self, "method", Method(self.method))
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValidationError(f"dt must be > 0, got {self.dt!r}")
        if not (math.isfinite(self.t_end) and self.t_end >= 0):
            raise ValidationError(f"t_end must be >= 0, got {self.t_end!r}")
        if not (math.isfinite(self.sample_every) and self.sample_every > 0):
            raise ValidationError(f"sample_every must be > 0, got {self.sample_every!r}")
        if self.dt > self.sample_every:
            raise ValidationError(f"dt ({self.dt}) must not exceed sample_every ({self.sample_every})")

    @property
    def n_samples(self) -> int:
        return int(math.floor(self.t_end / self.sample_every + 1e-9)) + 1

    @property
    def substeps(self) -> int:
        return max(1, math.ceil(self.sample_every / self.dt - 1e-9))


def _rates(s, i, beta, gamma, n):
    infection = beta * i * s / n
    ds = -infection
    di = infection - gamma * i
    # dR is -dS - dI so the three rates cancel exactly in floating point.
    return ds, di, -ds - di


def derivatives(state: SirState, params: EpidemicParams) -> tuple[float, float, float]:
    """Right-hand side ``(dS/dt, dI/dt, dR/dt)`` evaluated at ``state``."""
    return _rates(state.s, state.i, params.beta, params.gamma, params.n_pop)


def _rk4_step(s, i, r, h, beta, gamma, n):
    k1 = _rates(s, i, beta, gamma, n)
    k2 = _rates(s + 0.5 * h * k1[0], i + 0.5 * h * k1[1], beta, gamma, n)
    k3 = _rates(s + 0.5 * h * k2[0], i + 0.5 * h * k2[1], beta, gamma, n)
    k4 = _rates(s + h * k3[0], i + h * k3[1], beta, gamma, n)
    ds = h * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]) / 6
    di = h * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]) / 6
    return s + ds, i + di, r + (-ds - di)


def _euler_step(s, i, r, h, beta, gamma, n):
    ds, di, _ = _rates(s, i, beta, gamma, n)
    ds *= h
    di *= h
    return s + ds, i + di, r + (-ds - di)


_STEPPERS = {Method.RK4: _rk4_step, Method.EULER: _euler_step}


def _sanitize(x, name, t, n):
    if not math.isfinite(x):
        raise NonFiniteState(f"{name} became non-finite at t={t:.4g}; reduce dt")
    if x < 0:
        if x < -NEGATIVE_CLAMP * n:
            raise NonFiniteState(f"{name} went negative ({x:.3g}) at t={t:.4g}; reduce dt")
        return 0.0
    return x


def integrate(
    params: EpidemicParams,
    config: IntegrationConfig = IntegrationConfig(),
    conservation_rtol: float = CONSERVATION_RTOL,
) -> Trajectory:
    """Integrate the SIR system from t=0 and return the sampled trajectory.

    Raises
    ------
    NonFiniteState
        If a compartment overflows, becomes NaN or goes negative beyond
        roundoff. Negatives within ``NEGATIVE_CLAMP * N`` are set to 0.
    """
    step = _STEPPERS[config.method]
    beta, gamma, n = params.beta, params.gamma, params.n_pop
    m = config.substeps
    h = config.sample_every / m

    k_max = config.n_samples
    ts = np.arange(k_max) * config.sample_every
    out = np.empty((3, k_max))
    s, i, r = params.s0, params.i0, params.r0
    out[:, 0] = s, i, r
    for k in range(1, k_max):
        t0 = ts[k - 1]
        for j in range(m):
            s, i, r = step(s, i, r, h, beta, gamma, n)
            t = t0 + (j + 1) * h
            s = _sanitize(s, "S", t, n)
            i = _sanitize(i, "I", t, n)
            r = _sanitize(r, "R", t, n)
        out[:, k] = s, i, r

    return Trajectory(params, ts, out[0], out[1], out[2], conservation_rtol=conservation_rtol)


def verify_final_size_identity(traj: Trajectory) -> float:
    """Largest deviation from the exact invariant ``S(t) = S(0) exp(-R0 (R(t) - R(0)) / N)``.

    Returned as a fraction of N. For an exact solution this is 0; for a
    numerical one it measures the integration error.
    """
    p = traj.params
    predicted = traj.s[0] * np.exp(-r_naught(p) * (traj.r - traj.r[0]) / p.n_pop)
    return float(np.max(np.abs(traj.s - predicted)) / p.n_pop)


def peak(traj: Trajectory) -> tuple[float, float]:
    """``(t_peak, i_peak)`` of the sample with the largest I (earliest on ties)."""
    k = int(np.argmax(traj.i))
    return float(traj.t[k]), float(traj.i[k])
