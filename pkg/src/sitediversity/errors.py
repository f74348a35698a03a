"""Exception types shared across the package."""

from __future__ import annotations


class DomainError(ValueError):
    """An input lies outside the validity window of a model."""


class NumericalError(RuntimeError):
    """A quadrature, series or special-function evaluation failed."""


class UnsupportedConfigurationError(ValueError):
    """The requested metric is not defined for this network layout."""


class ConfigError(ValueError):
    """A scenario file is malformed or fails validation.

    Parameters
    ----------
    message : str
        Human readable description.
    line : int, optional
        1-based line in the source file that the problem refers to.
    path : str, optional
        Source file name.
    """

    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.path = path
        super().__init__(str(self))

    def __str__(self) -> str:
        where = self.path or "<config>"
        if self.line is not None:
            where = f"{where}:{self.line}"
        return f"{where}: {self.message}"
