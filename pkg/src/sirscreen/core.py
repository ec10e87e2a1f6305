"""Domain types shared across the package.

All types are frozen dataclasses; they validate on construction and are
never mutated afterwards.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .errors import ValidationError

#: Relative tolerance for ``s0 + i0 + r0 == n_pop`` when building parameters.
PARAM_RTOL = 1e-9
#: Relative tolerance for ``S + I + R == N`` on every trajectory sample.
CONSERVATION_RTOL = 1e-8
# Absolute slack (in units of N) for the monotonicity checks; pure roundoff.
_MONOTONE_ATOL = 1e-12


def _require(cond, msg):
    if not cond:
        raise ValidationError(msg)


def _finite(x):
    return isinstance(x, (int, float, np.floating, np.integer)) and math.isfinite(x)


@dataclass(frozen=True)
class TestCharacteristics:
    """Sensitivity ``a`` and specificity ``b`` of a binary screening test.

    Both must lie in (0, 1] and the test must be informative, i.e. Youden's
    J = a + b - 1 must be strictly positive.
    """

    __test__ = False  # keep pytest from collecting this as a test class

    a: float
    b: float

    def __post_init__(self):
        _require(_finite(self.a) and 0 < self.a <= 1, f"sensitivity must be in (0, 1], got {self.a!r}")
        _require(_finite(self.b) and 0 < self.b <= 1, f"specificity must be in (0, 1], got {self.b!r}")
        _require(
            self.a + self.b - 1 > 0,
            f"Youden's J = a + b - 1 must be > 0 (got a={self.a}, b={self.b}, "
            f"J={self.a + self.b - 1:.6g}); the test must be informative",
        )

    @property
    def sensitivity(self) -> float:
        return self.a

    @property
    def specificity(self) -> float:
        return self.b

    @property
    def j(self) -> float:
        return youden_j(self)


@dataclass(frozen=True)
class EpidemicParams:
    """Rates, population size and initial compartments of an SIR epidemic.

    ``beta`` and ``gamma`` are per week. ``s0``, ``i0`` and ``r0`` are the
    initial susceptible, infected and removed values; note ``r0`` is the
    initial *removed* compartment, not the reproduction number (see
    :func:`r_naught`). With ``n_pop=1`` all compartments are fractions.
    """

    beta: float
    gamma: float
    n_pop: float
    s0: float
    i0: float
    r0: float = 0.0
    rtol: float = field(default=PARAM_RTOL, repr=False, compare=False)

    def __post_init__(self):
        _require(_finite(self.beta) and self.beta >= 0, f"beta must be finite and >= 0, got {self.beta!r}")
        _require(_finite(self.gamma) and self.gamma > 0, f"gamma must be finite and > 0, got {self.gamma!r}")
        _require(_finite(self.n_pop) and self.n_pop > 0, f"population must be > 0, got {self.n_pop!r}")
        for name in ("s0", "i0", "r0"):
            v = getattr(self, name)
            _require(_finite(v) and v >= 0, f"{name} must be finite and >= 0, got {v!r}")
        total = self.s0 + self.i0 + self.r0
        _require(
            abs(total - self.n_pop) <= self.rtol * self.n_pop,
            f"s0 + i0 + r0 = {total!r} does not match population {self.n_pop!r}",
        )

    @classmethod
    def seeded(cls, beta, gamma, i0, n_pop=1.0, r0=0.0) -> EpidemicParams:
        """Build parameters with ``s0`` filled in as ``n_pop - i0 - r0``."""
        return cls(beta=beta, gamma=gamma, n_pop=n_pop, s0=n_pop - i0 - r0, i0=i0, r0=r0)

    @property
    def r_naught(self) -> float:
        return r_naught(self)


@dataclass(frozen=True)
class SirState:
    """One sample of the epidemic: time in weeks plus the three compartments."""

    t: float
    s: float
    i: float
    r: float

    def __post_init__(self):
        for name in ("t", "s", "i", "r"):
            v = getattr(self, name)
            _require(_finite(v), f"{name} must be finite, got {v!r}")
        for name in ("s", "i", "r"):
            _require(getattr(self, name) >= 0, f"{name} must be >= 0, got {getattr(self, name)!r}")

    @property
    def total(self) -> float:
        return self.s + self.i + self.r


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Sampled SIR solution stored column-wise as numpy arrays.

    On construction the samples are checked for strictly increasing time,
    conservation of ``S + I + R`` and monotone ``S`` (non-increasing) and
    ``R`` (non-decreasing).
    """

    params: EpidemicParams
    t: np.ndarray
    s: np.ndarray
    i: np.ndarray
    r: np.ndarray
    conservation_rtol: float = field(default=CONSERVATION_RTOL, repr=False)

    def __post_init__(self):
        cols = {}
        for name in ("t", "s", "i", "r"):
            arr = np.array(getattr(self, name), dtype=float)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)
            cols[name] = arr
        t, s, i, r = cols["t"], cols["s"], cols["i"], cols["r"]
        _require(t.ndim == 1 and t.size > 0, "trajectory needs at least one sample")
        _require(s.shape == t.shape == i.shape == r.shape, "trajectory columns must have equal length")
        _require(all(np.isfinite(c).all() for c in cols.values()), "trajectory contains non-finite values")
        _require(bool(np.all(np.diff(t) > 0)), "sample times must be strictly increasing")
        _require(bool(np.all(s >= 0) and np.all(i >= 0) and np.all(r >= 0)), "compartments must be >= 0")

        n = self.params.n_pop
        err = np.abs(s + i + r - n) / n
        worst = int(np.argmax(err))
        _require(
            err[worst] <= self.conservation_rtol,
            f"S + I + R deviates from N by {err[worst]:.3g} (relative) at t={t[worst]}",
        )
        slack = _MONOTONE_ATOL * n
        _require(bool(np.all(np.diff(s) <= slack)), "S must be non-increasing")
        _require(bool(np.all(np.diff(r) >= -slack)), "R must be non-decreasing")

    def __len__(self) -> int:
        return self.t.size

    def __getitem__(self, k: int) -> SirState:
        return SirState(float(self.t[k]), float(self.s[k]), float(self.i[k]), float(self.r[k]))

    def __iter__(self) -> Iterator[SirState]:
        return (self[k] for k in range(len(self)))

    @property
    def samples(self) -> list[SirState]:
        return list(self)

    @classmethod
    def from_states(cls, params: EpidemicParams, states, **kwargs) -> Trajectory:
        states = list(states)
        return cls(
            params,
            t=[x.t for x in states],
            s=[x.s for x in states],
            i=[x.i for x in states],
            r=[x.r for x in states],
            **kwargs,
        )


def youden_j(test: TestCharacteristics) -> float:
    """Youden's J statistic, ``a + b - 1``."""
    return test.a + test.b - 1


def r_naught(params: EpidemicParams) -> float:
    """Basic reproduction number ``beta / gamma``."""
    return params.beta / params.gamma
