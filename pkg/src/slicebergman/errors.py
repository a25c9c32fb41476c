"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain where an operation is defined.

    Raised for points outside the ball, branch-cut violations of real powers,
    series evaluated beyond their radius of convergence, and similar cases.
    """


class TruncationError(ArithmeticError):
    """A series did not reach its relative tolerance within ``max_terms``."""


class ConvergenceError(ArithmeticError):
    """The tridiagonal eigen-solver exceeded its iteration cap."""
