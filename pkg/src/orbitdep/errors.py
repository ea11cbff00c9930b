"""Exception hierarchy shared across the package."""


class OrbitdepError(Exception):
    """Base class for all library errors."""


class DomainError(OrbitdepError, ValueError):
    """Input violates a precondition or a constraint of an operation."""


class BudgetError(OrbitdepError, RuntimeError):
    """A configured size, effort or enumeration budget was exhausted.

    Attributes carry whatever partial information the operation can report
    (for example the largest N a counting run could have completed).
    """

    def __init__(self, message, **info):
        super().__init__(message)
        self.info = dict(info)
