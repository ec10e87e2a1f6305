"""Exception and warning classes raised by sirscreen."""


class SirScreenError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(SirScreenError, ValueError):
    """A parameter or configuration value violates its documented constraints."""


class NumericalError(SirScreenError, ArithmeticError):
    """A numerical procedure failed to produce a usable result."""


class NonFiniteState(NumericalError):
    """A compartment became NaN/inf or significantly negative during integration.

    Usually means the step size is too large for the chosen rates.
    """


class NoRoot(NumericalError):
    """The final-size relation has no solution inside the search bracket."""


class NotReachable(NumericalError):
    """No number of serial tests up to ``n_max`` reaches the PPV target."""


class DegeneratePpv(SirScreenError, ZeroDivisionError):
    """PPV is 0/0: zero prevalence with a perfectly specific test."""


class InvalidBaseline(SirScreenError, ValueError):
    """The baseline prevalence used as the ratio denominator is zero."""


class PerfectSpecificity(UserWarning):
    """Specificity is 1, so the prevalence threshold collapses to 0."""
