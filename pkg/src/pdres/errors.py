"""Exception hierarchy shared by all modules.

The CLI maps these onto exit codes: SpecError -> 2, PreconditionError -> 3,
ResourceCapError -> 4.
"""

from __future__ import annotations


class PdresError(Exception):
    """Base class for all library errors."""


class SpecError(PdresError, ValueError):
    """Malformed input: parse failures, bad field descriptors, invalid specs."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        elif column is not None:
            loc = f"column {column}: "
        super().__init__(loc + message)


class ContextError(PdresError, ValueError):
    """Objects from different rings or algebras were combined."""


class PreconditionError(PdresError, ValueError):
    """A mathematical precondition of an operation does not hold."""


class ResourceCapError(PdresError, RuntimeError):
    """A configured size or degree cap was exceeded."""

    def __init__(self, message: str, degree: int | None = None):
        self.degree = degree
        super().__init__(message)


class ConsistencyError(PdresError, AssertionError):
    """Two independent computations disagreed; indicates a bug."""
