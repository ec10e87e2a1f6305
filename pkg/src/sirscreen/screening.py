"""Bayesian screening-test analytics.

Positive predictive value as a function of prevalence, the ratio of PPVs
between two prevalences (``zeta``), the prevalence threshold, and the number
of serial positive results needed to get back above the PPV obtained at the
threshold.

Prevalences are plain floats in [0, 1].
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Optional

from .core import TestCharacteristics, youden_j
from .errors import DegeneratePpv, InvalidBaseline, NotReachable, PerfectSpecificity, ValidationError


def _check_prevalence(phi, name="phi"):
    if not (isinstance(phi, (int, float)) or hasattr(phi, "__float__")):
        raise ValidationError(f"{name} must be a real number, got {phi!r}")
    phi = float(phi)
    if not (0.0 <= phi <= 1.0):
        raise ValidationError(f"{name} must be in [0, 1], got {phi!r}")
    return phi


@dataclass(frozen=True)
class SerialTestPolicy:
    """How :func:`iterations_to_overcome` chooses its PPV target.

    ``target=None`` uses the single-test PPV at the prevalence threshold
    (about 0.907 for a=0.95, b=0.99). A float fixes the target directly.
    ``n_max`` caps the search.
    """

    target: Optional[float] = None
    n_max: int = 50

    def __post_init__(self):
        if self.target is not None and not (0.0 < self.target < 1.0):
            raise ValidationError(f"fixed PPV target must be in (0, 1), got {self.target!r}")
        if int(self.n_max) != self.n_max or self.n_max < 1:
            raise ValidationError(f"n_max must be an integer >= 1, got {self.n_max!r}")


def ppv(test: TestCharacteristics, phi: float) -> float:
    """Positive predictive value ``a phi / (a phi + (1 - b)(1 - phi))``.

    Returns 0 at ``phi == 0`` (when b < 1) and 1 when ``b == 1`` (when
    phi > 0). The 0/0 case ``phi == 0, b == 1`` raises :class:`DegeneratePpv`.
    """
    phi = _check_prevalence(phi)
    tp = test.a * phi
    fp = (1 - test.b) * (1 - phi)
    if tp + fp == 0:
        raise DegeneratePpv("PPV undefined at zero prevalence with specificity 1")
    return tp / (tp + fp)


def zeta(test: TestCharacteristics, phi0: float, phik: float) -> float:
    """Ratio ``ppv(phik) / ppv(phi0)`` written in Youden form.

        zeta = [phik (1 - b) + J phi0 phik] / [phi0 (1 - b) + J phi0 phik]

    Values below 1 mean predictive value was lost going from ``phi0`` to
    ``phik``; ``zeta(phi0, phi0) == 1``.
    """
    phi0 = _check_prevalence(phi0, "phi0")
    phik = _check_prevalence(phik, "phik")
    if phi0 == 0:
        raise InvalidBaseline("baseline prevalence phi0 must be > 0")
    fpr = 1 - test.b
    cross = youden_j(test) * phi0 * phik
    den = phi0 * fpr + cross
    if den == 0:
        raise DegeneratePpv("PPV undefined at zero prevalence with specificity 1")
    return (phik * fpr + cross) / den


def prevalence_threshold(test: TestCharacteristics) -> float:
    """Prevalence below which PPV falls off steeply.

        phi_e = (sqrt(a (1 - b)) + b - 1) / J

    With ``b == 1`` the threshold degenerates to 0; a
    :class:`~sirscreen.errors.PerfectSpecificity` warning is issued and 0.0
    returned.
    """
    if test.b == 1:
        warnings.warn("specificity is 1; prevalence threshold degenerates to 0", PerfectSpecificity, stacklevel=2)
        return 0.0
    fpr = 1 - test.b
    return (math.sqrt(test.a * fpr) - fpr) / youden_j(test)


def serial_ppv(test: TestCharacteristics, phi: float, n: int) -> float:
    """PPV after ``n`` conditionally independent positive results.

    ``a**n phi / (a**n phi + (1 - b)**n (1 - phi))``; equals :func:`ppv` for n=1.
    """
    if int(n) != n or n < 1:
        raise ValidationError(f"n must be an integer >= 1, got {n!r}")
    n = int(n)
    phi = _check_prevalence(phi)
    tp = test.a**n * phi
    fp = (1 - test.b) ** n * (1 - phi)
    if tp + fp == 0:
        raise DegeneratePpv("PPV undefined at zero prevalence with specificity 1")
    return tp / (tp + fp)


def serial_target(test: TestCharacteristics, policy: SerialTestPolicy = SerialTestPolicy()) -> float:
    """PPV level that :func:`iterations_to_overcome` has to reach."""
    if policy.target is not None:
        return policy.target
    if test.b == 1:
        # every positive is a true positive; the threshold PPV is its limit, 1
        return 1.0
    return ppv(test, prevalence_threshold(test))


def iterations_to_overcome(
    test: TestCharacteristics, phi: float, policy: SerialTestPolicy = SerialTestPolicy()
) -> int:
    """Smallest ``n >= 1`` with ``serial_ppv(test, phi, n) >= target``.

    Found by counting upward from 1, so the answer is never thrown off by a
    ceiling applied to an almost-integer. Raises :class:`NotReachable` when
    ``phi == 0`` or when ``n_max`` tests are not enough.
    """
    phi = _check_prevalence(phi)
    target = serial_target(test, policy)
    if phi == 0:
        raise NotReachable("no number of positive tests gives a PPV above 0 at zero prevalence")
    for n in range(1, policy.n_max + 1):
        if serial_ppv(test, phi, n) >= target:
            return n
    raise NotReachable(f"target PPV {target:.6g} not reached within {policy.n_max} tests at prevalence {phi:.6g}")
