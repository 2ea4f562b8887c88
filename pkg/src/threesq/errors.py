"""Exception types shared across the package.

DomainError marks inputs outside an operation's domain (CLI exit code 2),
InvariantError marks a violated internal consistency check (exit code 3).
"""


class DomainError(ValueError):
    pass


class InvariantError(RuntimeError):
    pass


class DuplicatePointError(DomainError):
    """Two points of a set coincide where a statistic needs them distinct."""

    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"duplicate points at indices {i} and {j}")
