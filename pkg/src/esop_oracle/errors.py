"""Exception hierarchy shared by every stage of the compiler."""

from __future__ import annotations


class OracleError(Exception):
    """Base class for all errors raised by this package."""


class InputError(OracleError, ValueError):
    """Malformed value passed to a formula or circuit operation."""


class ParseError(OracleError):
    """Text input does not follow the expected grammar.

    ``line`` is 1-based for line-oriented formats; ``offset`` is a 0-based
    byte offset for the expression grammar.
    """

    def __init__(self, message: str, *, line: int | None = None, offset: int | None = None):
        self.line = line
        self.offset = offset
        where = ""
        if line is not None:
            where = f"line {line}: "
        elif offset is not None:
            where = f"offset {offset}: "
        super().__init__(where + message)


class CapacityError(OracleError):
    """A configured size cap (brute force, simulation, ancilla pool) was exceeded."""


class EncodingError(OracleError):
    """A transform was asked to encode a shape it does not support."""


class SynthesisError(OracleError):
    """A formula cannot be turned into an oracle circuit."""


class CircuitError(OracleError, ValueError):
    """Invalid gate or circuit construction."""


class NotLoweredError(CircuitError):
    """An operation requiring a Clifford+T circuit met an MCX gate."""


class UnsatError(OracleError):
    """The formula has no satisfying assignment, so Grover search is undefined."""
