"""Exception hierarchy shared across the package."""


class ScpboundError(Exception):
    """Base class for all scpbound-specific errors."""


class ParseError(ScpboundError):
    """Instance file could not be parsed. Carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class InfeasibleInstanceError(ScpboundError):
    """The instance has a row that no column covers, so no cover exists."""

    def __init__(self, row: int):
        self.row = row  # 1-based, matching file/CLI conventions
        super().__init__(f"row {row} has no covering column")


class DecompositionOrderingError(ScpboundError):
    """Block density ordering required by the two-block bound is violated."""


class RowLimitError(ScpboundError):
    """Row count exceeds the configured cap for the cubic-cost triple sums."""


class InternalInvariantError(ScpboundError):
    """An internal consistency check failed; indicates a bug, not bad input."""
