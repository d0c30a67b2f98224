"""Exception hierarchy shared by every module in the package."""


class EpdError(Exception):
    """Base class for all errors raised by ``epdist``."""


class DomainError(EpdError, ValueError):
    """An argument lies outside the domain of the operation."""


class InapplicableModelError(DomainError):
    """The model cannot be fitted to the data at all (e.g. undefined likelihood)."""


class NumericalError(EpdError, RuntimeError):
    """A numerical procedure failed to reach its tolerance."""

    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConvergenceError(NumericalError):
    """Likelihood maximisation failed; ``best`` holds the best point seen, if any."""

    def __init__(self, message, best=None, diagnostics=None):
        super().__init__(message, diagnostics)
        self.best = best


class DegenerateDataError(ConvergenceError):
    """The likelihood is unbounded on the data (no finite maximiser exists)."""
