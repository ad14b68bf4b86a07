"""Exception hierarchy shared by every module.

The CLI maps these onto exit statuses: ``InputError`` -> 2,
``IncompleteFragmentError`` -> 3.
"""

from __future__ import annotations


class OperadError(Exception):
    """Base class for all library errors."""


class InputError(OperadError, ValueError):
    """Malformed or inconsistent input (dimensions, colors, fields...)."""


class ParseError(InputError):
    """Operad file could not be read. ``line``/``column`` are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SemanticError(InputError):
    """Operad file parsed but declares something inconsistent."""

    def __init__(self, name: str, message: str):
        self.name = name
        super().__init__(f"{name}: {message}")


class UnsupportedCharacteristicError(InputError):
    pass


class NotACycleError(InputError):
    def __init__(self, message: str, boundary=None):
        self.boundary = boundary
        super().__init__(message)


class MasseyUndefinedError(InputError):
    """A precondition class of a Massey product is nonzero."""


class IncompleteFragmentError(OperadError, LookupError):
    """A composite or action needed by a computation is not declared."""

    def __init__(self, message: str, missing=None):
        self.missing = missing
        super().__init__(message)


class FragmentAxiomError(OperadError):
    """A computation exposed a violated operad axiom (e.g. dM != 0)."""
