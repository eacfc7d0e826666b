class PrecondError(ValueError):
    """A documented precondition was violated.  The CLI maps this to exit code 2."""


class BudgetError(RuntimeError):
    """An enumeration exceeded its configured budget.  CLI exit code 3."""
