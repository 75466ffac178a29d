"""Custom exceptions for quatrace."""


class QuatraceError(Exception):
    """Base exception for quatrace."""


class ConfigurationError(QuatraceError):
    """Configuration-related errors."""


class InvalidConfigError(ConfigurationError):
    """Configuration is invalid."""


class CombinatoricsError(QuatraceError):
    """Errors in permutation, partition or premap construction."""


class DomainMismatchError(CombinatoricsError):
    """Operands live on different index sets."""


class InvalidPermutationError(CombinatoricsError):
    """Mapping is not a bijection of its carrier set."""


class InvalidPreMapError(CombinatoricsError):
    """Permutation violates the premap conditions."""


class CapExceededError(QuatraceError):
    """An enumeration or summation would exceed the configured cap."""

    def __init__(self, message: str, requested: int = 0, cap: int = 0) -> None:
        super().__init__(message)
        self.requested = requested
        self.cap = cap


class WeingartenError(QuatraceError):
    """Weingarten table construction errors."""


class SingularGramError(WeingartenError):
    """Gram matrix is singular at the requested N."""

    def __init__(self, n_value: int, degree: int) -> None:
        super().__init__(f"Gram matrix of degree {degree} is singular at N={n_value}")
        self.n_value = n_value
        self.degree = degree


class QuaternionError(QuatraceError):
    """Quaternion arithmetic errors."""


class DimensionMismatchError(QuaternionError):
    """Matrix shapes do not fit together."""


class IndexStructureError(QuaternionError):
    """Contraction data does not match the supplied matrices."""


class EnsembleError(QuatraceError):
    """Random matrix ensemble errors."""


class ManifestError(EnsembleError):
    """Ensemble manifest could not be loaded or validated."""


class OracleGapError(EnsembleError):
    """Moment oracle has no value for a requested premap."""


class ExpansionError(QuatraceError):
    """Expansion engine errors."""


class BracketError(QuatraceError):
    """Bracket-diagram errors."""


class NotBracketableError(BracketError):
    """Permutation pair admits no bracket expression."""

    def __init__(self, obstruction: str, detail: str = "", crossing: tuple[int, ...] | None = None) -> None:
        message = obstruction if not detail else f"{obstruction}: {detail}"
        super().__init__(message)
        self.obstruction = obstruction
        self.detail = detail
        self.crossing = crossing


class DslError(QuatraceError):
    """Expression language errors."""


class ParseError(DslError):
    """Expression text could not be parsed."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position


class DuplicateSymbolError(ParseError):
    """A symbol index occurs more than once."""
