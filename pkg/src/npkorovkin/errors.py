class ArgumentError(ValueError):
    """An argument violates a documented precondition."""


class NumericsError(RuntimeError):
    pass


class EvaluationError(NumericsError):
    """A function returned a non-finite value."""


class ToleranceNotMetError(NumericsError):
    """Refinement stopped before the requested tolerance was reached."""

    def __init__(self, message, best_estimate):
        super().__init__(f"{message} (best estimate {best_estimate!r})")
        self.best_estimate = best_estimate


class CapabilityError(NumericsError):
    """The requested evaluation path cannot handle this size; use quadrature."""


class WitnessNotFoundError(NumericsError):
    pass


class InconsistencyError(NumericsError):
    """A quantity that must be non-negative came out clearly negative."""
