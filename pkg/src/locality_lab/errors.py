"""Exception types shared across the package."""


class LocalityLabError(Exception):
    """Base class for every error this package raises on purpose."""


class DimensionMismatchError(LocalityLabError):
    """Operands act on different numbers of qubits."""


class PauliParseError(LocalityLabError):
    """Malformed Pauli word text."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class UnsupportedRepresentationError(LocalityLabError):
    """The requested operation would leave the representation's domain."""


class InvalidFactorizationError(LocalityLabError):
    """Factor list violates the commuting-factor requirements."""


class DependentFactorsError(LocalityLabError):
    """Some sub-product of the factor words is plus or minus the identity."""


class IncomparableStatesError(LocalityLabError):
    """States cannot be compared position by position."""


class CapacityError(LocalityLabError):
    """Dense-matrix request exceeds the qubit cap."""


class CircuitParseError(LocalityLabError):
    """Malformed gate or circuit text."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ScenarioError(LocalityLabError):
    """Scenario file failed to parse or validate."""

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
        if line is not None:
            prefix += f"{line}:"
        if prefix:
            message = f"{prefix} {message}"
        super().__init__(message)
        self.line = line
        self.path = path
