"""Exception types shared across the package."""
from __future__ import annotations


class MtkError(Exception):
    """Base class for all errors raised by this package."""


class OrderOverflowError(MtkError):
    """A cyclotomic field order exceeded the configured bound."""


class ValidationError(MtkError):
    """Structured data failed an exact invariant check.

    ``violations`` lists one human-readable entry per failed invariant,
    each naming the invariant and a witness.
    """

    def __init__(self, message: str, violations: tuple[str, ...] = ()):
        super().__init__(message if not violations else message + "\n  - " + "\n  - ".join(violations))
        self.violations = violations


class ConstructionError(MtkError):
    """An operation could not build a well-defined result from its inputs."""


class SqrtNotRepresentableError(MtkError):
    """No square root exists in any of the attempted cyclotomic fields."""


class FixedPointDataRequiredError(MtkError):
    """Fixed-point sector matrices are needed and could not be solved for.

    ``partial`` carries everything computed up to the failure point
    (orbits, stabilizers, grading, known sector matrices).
    """

    def __init__(self, message: str, partial: dict):
        super().__init__(message)
        self.partial = partial
