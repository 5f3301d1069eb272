"""Exception types shared across the package."""


class ChebspecError(Exception):
    """Base class for all package errors."""


class TableauError(ChebspecError):
    """A constructed tableau failed its structural certification."""


class SolverError(ChebspecError):
    """Base class for failures raised while stepping.

    ``step_index`` is filled in by the multi-step driver so callers can tell
    which step failed.
    """

    def __init__(self, message, step_index=None):
        super().__init__(message)
        self.step_index = step_index

    def __str__(self):
        msg = super().__str__()
        if self.step_index is not None:
            return f"{msg} (step {self.step_index})"
        return msg


class FixedPointDiverged(SolverError):
    """Stage iteration hit its cap or blew up; the step is too large."""


class NonFiniteState(SolverError):
    """The vector field produced inf or nan."""
