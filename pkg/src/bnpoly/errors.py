"""Shared exception types."""


class BnPolyError(Exception):
    """Base class for all package-specific errors."""


class IndexFamilyMismatchError(BnPolyError):
    """Two vectors do not live over the same ground set / index family."""


class NotScoreEquivalentError(BnPolyError):
    """An operation required a score-equivalent objective and got none."""


class NotSupermodularError(BnPolyError):
    """An operation required a (standardized) supermodular set function."""


class InvalidInequalityError(BnPolyError):
    """An inequality presented as valid is violated by some point."""


class InfeasibleError(BnPolyError):
    """Linear program has no feasible point."""


class UnboundedError(BnPolyError):
    """Linear program / polyhedron is unbounded where boundedness is required."""


class BudgetExceededError(BnPolyError):
    """A configured resource budget (time or intermediate size) was exhausted."""
