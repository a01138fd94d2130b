"""Exception hierarchy shared by every module."""


class GainGraphError(Exception):
    """Base class for all library errors."""


class DomainError(GainGraphError, ValueError):
    """Inputs that are well formed but outside an operation's domain."""


class ConnectivityError(DomainError):
    pass


class ShapeError(DomainError):
    """A vertex sequence that is not a cycle (or path) of the graph."""


class InvariantError(GainGraphError):
    """A structural invariant failed to hold (tree normality, Hermitian input, ...)."""


class NumericalError(GainGraphError):
    """A numerical consistency check exceeded its threshold."""


class CapacityError(GainGraphError):
    """An enumeration guard was exceeded."""


class UnsupportedClassError(DomainError):
    """The graph lies outside the class a constructive procedure covers."""


class ParseError(GainGraphError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
