"""Exception types shared across the package."""


class HyperboundError(Exception):
    """Base class for all errors raised by hyperbound."""


class PreconditionError(HyperboundError, ValueError):
    """An operation was called outside its documented domain."""


class BudgetExceeded(HyperboundError):
    """An enumeration would visit more objects than the configured budget."""

    def __init__(self, what, size, budget):
        super().__init__(f"{what}: {size} exceeds budget {budget}")
        self.what = what
        self.size = size
        self.budget = budget


class InternalConsistencyError(HyperboundError):
    """A cross-check that cannot fail for a correct implementation failed."""


DEFAULT_MAX_POINTS = 10**7
