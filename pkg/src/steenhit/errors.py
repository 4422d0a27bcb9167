"""Exception types raised by the engine."""


class SteenhitError(Exception):
    pass


class ConfigurationError(SteenhitError, ValueError):
    """Bad modulus or other invalid global setting."""


class UsageError(SteenhitError, ValueError):
    """Caller passed arguments that violate an operation's preconditions."""


class BudgetExceeded(SteenhitError):
    """A computation would exceed the configured resource budget."""

    def __init__(self, what, size, bound):
        super().__init__(f"{what}: size {size} exceeds budget {bound}")
        self.what = what
        self.size = size
        self.bound = bound
