"""Exception types shared across the package."""


class PolycertError(Exception):
    """Base class for all package-specific errors."""


class ParseError(PolycertError):
    """Malformed polynomial text or system file."""


class IntervalDivisionError(PolycertError):
    """Division by an interval containing zero (possible singularity).

    The caller decides whether to split the interval or raise precision;
    extended interval arithmetic is deliberately not provided.
    """


class NotZeroDimensional(PolycertError):
    """An ideal expected to be zero-dimensional is not."""


class NonSeparatingForm(PolycertError):
    """A candidate linear form failed the separation check; retry with the
    next candidate of the schedule."""


class UnsupportedInput(PolycertError):
    """Structurally valid input outside the supported problem class
    (e.g. a positive-dimensional torus system, generic degeneracy)."""
