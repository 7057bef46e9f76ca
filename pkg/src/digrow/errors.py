"""Shared exception types."""

from __future__ import annotations


class AlphabetMismatch(ValueError):
    """Operands live over different alphabets."""


class FieldMismatch(ValueError):
    """Operands carry coefficients from different scalar fields."""


class DegreeBoundExceeded(ValueError):
    """An element reaches beyond the degrees a table covers."""


class ResourceCapExceeded(RuntimeError):
    """A computation would outgrow the configured desk-scale budget."""


class ParseError(ValueError):
    """Syntax or semantic error in a textual input, with a position."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"{message} at line {line}, column {column}")
        self.message = message
        self.line = line
        self.column = column
