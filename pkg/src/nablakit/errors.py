"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input value or file (bad simplex, dangling label, ...)."""


class ParameterError(ValueError):
    """A precondition on operation parameters is violated."""


class BudgetExceeded(RuntimeError):
    """An enumeration or time budget ran out before the operation finished."""


class InternalError(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""
