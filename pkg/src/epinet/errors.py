"""Exception hierarchy shared across the package."""


class EpinetError(Exception):
    """Base class for every error raised by this package."""


class DataError(EpinetError, ValueError):
    """Malformed or inconsistent input data (unknown ids, schema violations)."""


class SchemaError(DataError):
    """Input document does not conform to its JSON schema."""

    def __init__(self, message: str, path: str = "$"):
        super().__init__(f"{path}: {message}")
        self.path = path


class FormulaSyntaxError(DataError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class ComputationError(EpinetError):
    """A well-formed request that cannot be computed."""


class UnknownTruthError(ComputationError):
    """A knowledge evaluation reached a proposition whose truth is Unknown."""


class ConvergenceError(ComputationError):
    pass
