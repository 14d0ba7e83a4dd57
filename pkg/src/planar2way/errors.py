"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class TwoWayError(Exception):
    """Base class for all errors raised by :mod:`planar2way`."""


class AlphabetError(TwoWayError, ValueError):
    """A word contains a symbol outside the expected alphabet."""


class UnknownState(TwoWayError, KeyError):
    pass


class NondeterministicMachine(TwoWayError):
    """More than one transition applies where a deterministic step is required."""


class MissingOrder(TwoWayError):
    """The directed state set carries no total order but one is required."""


class StateSpaceTooLarge(TwoWayError):
    pass


class CapExceeded(TwoWayError):
    """Monoid closure produced more elements than the configured cap."""


class NotReversible(TwoWayError):
    pass


class NotPlanar(TwoWayError):
    pass


class AlphabetMismatch(TwoWayError):
    pass


class WrongStateCount(TwoWayError):
    pass


class NotAperiodic(TwoWayError):
    pass


class NotCopylessMonotone(TwoWayError):
    pass


class ValidationError(TwoWayError, ValueError):
    """A machine description is syntactically fine but semantically invalid."""


class ParseError(TwoWayError, ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
