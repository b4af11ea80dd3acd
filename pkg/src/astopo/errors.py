"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "AstopoError",
    "GraphBuildError",
    "ParseError",
    "EmptyGraphError",
    "DisconnectedGraphError",
    "UndefinedMetricError",
    "ConvergenceError",
    "FitError",
]


class AstopoError(Exception):
    """Base class for all errors raised by this package."""


class GraphBuildError(AstopoError, ValueError):
    """Invalid construction input, e.g. a self-pair or an out-of-range ASN."""


class ParseError(AstopoError, ValueError):
    """Malformed input text; message carries the line or record position."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class EmptyGraphError(AstopoError, ValueError):
    """Operation requires a non-empty graph."""


class DisconnectedGraphError(AstopoError, ValueError):
    """Operation requires a connected graph; caller may reduce to the
    giant component first."""


class UndefinedMetricError(AstopoError, ValueError):
    """The metric does not exist for this input (e.g. zero variance)."""


class ConvergenceError(AstopoError, RuntimeError):
    """Iterative solver failed to converge; carries the achieved residual."""

    def __init__(self, message: str, residual: float | None = None):
        if residual is not None:
            message = f"{message} (achieved residual {residual:g})"
        super().__init__(message)
        self.residual = residual


class FitError(AstopoError, ValueError):
    """Fit input rejected (too few points, non-positive coordinates...)."""
