"""Exception types shared across visicube."""


class VisicubeError(Exception):
    pass


class DimensionError(VisicubeError, ValueError):
    """Vertices or sets from different dimensions were mixed."""


class PreconditionError(VisicubeError, ValueError):
    pass


class InfeasibleScaleError(VisicubeError):
    """An exhaustive check was requested above its dimension cap."""


class InvalidFamilyError(VisicubeError):
    """A supplied layer family contains a forbidden daisy."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantBreachError(VisicubeError):
    """Something the construction guarantees failed to hold."""


class BudgetExhaustedError(VisicubeError):
    """A bounded loop ran out of rounds; ``partial`` carries the last state."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class VertexFormatError(VisicubeError, ValueError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column
