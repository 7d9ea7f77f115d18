"""Exception hierarchy shared by every module."""

from typing import Any, Optional


class BlockadeLabError(Exception):
    """Base class for all library errors."""


class GraphError(BlockadeLabError, ValueError):
    """Malformed graph: self-loop, out-of-range endpoint, duplicate edge, bad JSON."""


class BlockadeError(BlockadeLabError, ValueError):
    """Malformed blockade: overlapping or empty blocks, bad positions."""


class SearchLimitError(BlockadeLabError):
    """An exhaustive search was asked to go beyond its configured cap."""

    def __init__(self, what: str, limit: int, requested: int):
        self.what = what
        self.limit = limit
        self.requested = requested
        super().__init__(f"{what}: size {requested} exceeds search limit {limit}")


class PreconditionError(BlockadeLabError):
    """One or more preconditions of a construction do not hold."""

    def __init__(self, reasons: list[str], counterexample: Optional[Any] = None):
        self.reasons = list(reasons)
        self.counterexample = counterexample
        super().__init__("; ".join(self.reasons))


class InvariantError(BlockadeLabError):
    """A postcondition or run-time invariant was violated."""


class GenerationError(BlockadeLabError):
    """A generator could not produce an instance (rejection sampling exhausted)."""


class ConfigError(BlockadeLabError):
    """Malformed suite configuration."""

    def __init__(self, message: str, location: str = ""):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
