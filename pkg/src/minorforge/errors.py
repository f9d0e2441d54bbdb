"""Exception hierarchy shared by every module."""

from __future__ import annotations


class GraphError(ValueError):
    """Base class for all errors raised by minorforge."""


class InvalidEdge(GraphError):
    pass


class LoopRejected(GraphError):
    pass


class TooLarge(GraphError):
    pass


class ParseError(GraphError):
    """Malformed graph6 or edge-list input.

    ``offset`` is the byte offset (graph6) and ``line`` the 1-based line
    number (edge lists, streams) where the problem was detected.
    """

    def __init__(self, message: str, *, offset: int | None = None, line: int | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if offset is not None:
            where.append(f"byte {offset}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)
        self.offset = offset
        self.line = line


class EmptySet(GraphError):
    pass


class NotConnected(GraphError):
    pass


class BadSeed(GraphError):
    pass


class Undefined(GraphError):
    """Invariant requested for a graph where it has no value (n = 0)."""
