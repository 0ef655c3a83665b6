"""
Error hierarchy for the tiling toolkit.
Services raise these on precondition violations; routes turn them into 400s.
"""
from typing import Optional


class TilingError(Exception):
    """Base class for every domain error raised by the services."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message

    def to_dict(self):
        return {'error': self.message, 'kind': type(self).__name__}


class ParseError(TilingError):
    """Text could not be parsed; position is the 0-based offending index."""

    def __init__(self, message: str, text: str = '', position: Optional[int] = None):
        if position is not None:
            message = f"{message} at position {position} in {text!r}"
        super().__init__(message)
        self.text = text
        self.position = position


class MarkParseError(ParseError):
    pass


class SymbolParseError(ParseError):
    pass


class TileNameError(ParseError):
    pass


class ContextError(TilingError):
    """Mixed T1/T2 marks, or a d-channel operation on a T1 mark."""


class UnknownCatalogueError(TilingError):
    pass


class UnnameableTileError(TilingError):
    pass


class RuleMismatchError(TilingError):
    pass


class LevelLimitError(TilingError):
    pass


class NotFullSymbolError(TilingError):
    pass


class NotDeterministicError(TilingError):
    pass


class TranscriptionError(TilingError):
    """A data fixture disagrees with the derivation; cell names the entry."""

    def __init__(self, message: str, cell: Optional[str] = None):
        if cell:
            message = f"{message} (cell {cell})"
        super().__init__(message)
        self.cell = cell


class BudgetExceededError(TilingError):
    """A search ran out of nodes where the caller needs an exact answer."""
