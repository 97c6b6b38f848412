"""Exception types shared across the toolkit."""


class PgidealsError(Exception):
    """Base class for every error raised by this package."""


class ParseError(PgidealsError):
    """Malformed input text; carries a line number or character offset."""

    def __init__(self, message, *, line=None, offset=None):
        if line is not None:
            message = f"{message} (line {line})"
        elif offset is not None:
            message = f"{message} (offset {offset})"
        super().__init__(message)
        self.line = line
        self.offset = offset


class SupportError(PgidealsError):
    """A cycle mentions a vertex its graph does not have."""


class DomainError(PgidealsError):
    """An argument violates an operation's precondition."""


class InconsistentDataError(PgidealsError):
    """Numerical data that cannot come from any normal surface singularity."""


class ClosureGuardError(PgidealsError):
    """Anti-nef closure ran past its coefficient bound; the intersection
    lattice is not negative definite."""


class BudgetError(PgidealsError):
    """A resource cap (basis size, coefficient bit length) was exceeded."""
