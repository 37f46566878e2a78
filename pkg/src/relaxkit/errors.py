"""Exception types shared across the package."""


class RelaxkitError(Exception):
    """Base class for package-specific failures."""


class ConvergenceError(RelaxkitError):
    """A series, quadrature or inversion did not reach its tolerance.

    Raised instead of returning a silently wrong value; the message carries
    the diagnostics (term counts, last increments) needed to understand why.
    """


class NumericalError(RelaxkitError):
    """A numerical method failed structurally (overflow, instability)."""
