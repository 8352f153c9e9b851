"""Shared error types."""


class BudgetExceeded(RuntimeError):
    """An enumeration or construction would exceed its configured budget."""


class NonConvergence(RuntimeError):
    """An iterative numeric procedure failed to reach its tolerance."""
