"""Exception types shared across the package."""


class GammaFtsError(Exception):
    """Base class for all package errors."""


class ArgumentError(GammaFtsError, ValueError):
    """A caller-supplied argument violates an operation's precondition."""


class SchemaError(GammaFtsError):
    """Column set, variable names, or file layout do not match expectations."""


class ParseError(GammaFtsError):
    """A cell or timestamp could not be parsed.

    ``line`` is the 1-based line number in the source file (header is line 1).
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class StateError(GammaFtsError, RuntimeError):
    """Operation invoked on an object in the wrong state (e.g. unfitted)."""


class NumericError(GammaFtsError, ArithmeticError):
    """A numeric procedure diverged or failed to converge.

    ``epoch`` carries the training epoch at which divergence was detected,
    when applicable.
    """

    def __init__(self, message: str, epoch: int | None = None):
        if epoch is not None:
            message = f"epoch {epoch}: {message}"
        super().__init__(message)
        self.epoch = epoch


class DegenerateUodError(ArgumentError):
    """A variable is constant, so no usable universe of discourse exists."""


class UndefinedMetricError(GammaFtsError):
    """A metric has no defined value on the given inputs (empty score set)."""


class ConfigError(GammaFtsError):
    """Experiment configuration is invalid or incomplete."""
