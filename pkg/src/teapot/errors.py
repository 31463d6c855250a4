"""Exception types shared across the package."""


class TeapotError(Exception):
    """Base class for all errors raised by this package."""


class WordError(TeapotError, ValueError):
    """Malformed word or not enough symbols available."""


class PreconditionError(TeapotError, ValueError):
    """An argument violates a documented precondition (e.g. slope outside (sqrt2, 2))."""


class TieError(TeapotError):
    """An orbit hit the critical point under the exact_or_fail convention."""


class OrbitNotFinite(TeapotError):
    """Critical orbit did not close up within the step bound."""
