"""Shared exception types."""


class BudgetExceeded(RuntimeError):
    """An exact enumeration would exceed the configured resource budget."""
