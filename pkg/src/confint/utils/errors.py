"""Exception taxonomy and structured error reporting for the CLI."""

from __future__ import annotations

import json
import sys

from rich.console import Console
from rich.markup import escape

console = Console(stderr=True)


class ConfintError(Exception):
    """Base class for all errors raised by confint."""


class DomainError(ConfintError, ValueError):
    """An argument lies outside the domain of the called function."""


class InputDataError(ConfintError):
    """A data file could not be read or parsed."""


class NumericError(ConfintError, ArithmeticError):
    """A numerical procedure failed."""


class BracketError(NumericError):
    """The function does not change sign over the search bracket."""


class ConvergenceError(NumericError):
    """An iterative procedure exhausted its iteration budget."""


class FitError(NumericError):
    """The likelihood optimizer did not converge."""


class CurvatureError(NumericError):
    """The Hessian at the optimum is singular or not positive definite."""


class DegenerateBootstrapError(NumericError):
    """All bootstrap replicates lie on one side of the estimate."""


class EstimatorError(NumericError):
    """An estimator failed on a resample or delete-one subsample."""

    def __init__(self, message: str, index: int | None = None) -> None:
        super().__init__(message if index is None else f"{message} (subsample {index})")
        self.index = index


# Exit statuses shared by every command
EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_NUMERIC = 4

# Actionable hints keyed by error substring
_ERROR_HINTS: list[tuple[str, str]] = [
    ("does not change sign", "The root is not bracketed; check alpha and the observation"),
    ("positive definite", "The log-likelihood is not regular at the optimum; use the jackknife or bootstrap interval"),
    ("singular", "The log-likelihood is not regular at the optimum; use the jackknife or bootstrap interval"),
    ("did not converge", "The optimizer stopped early; try another start value or a larger sample"),
    ("one side", "All replicates fall on one side of the estimate; raise --r or use the percentile interval"),
    ("line", "Data files hold one numeric value per line; '#' starts a comment"),
    ("no such file", "Check the --file path"),
    ("at least 2", "This interval needs two or more observations"),
]


def _get_hint(error_message: str) -> str | None:
    """Match an error message to an actionable hint."""
    lower = error_message.lower()
    for pattern, hint in _ERROR_HINTS:
        if pattern.lower() in lower:
            return hint
    return None


def _classify(error: Exception) -> tuple[str, int]:
    """Map an exception to its error code and exit status."""
    if isinstance(error, InputDataError):
        return "INPUT_ERROR", EXIT_INPUT
    if isinstance(error, DomainError):
        return "DOMAIN_ERROR", EXIT_INPUT
    if isinstance(error, CurvatureError):
        return "CURVATURE_ERROR", EXIT_NUMERIC
    if isinstance(error, DegenerateBootstrapError):
        return "DEGENERATE_BOOTSTRAP", EXIT_NUMERIC
    if isinstance(error, NumericError):
        return "NUMERIC_ERROR", EXIT_NUMERIC
    if isinstance(error, (FileNotFoundError, PermissionError, UnicodeDecodeError)):
        return "INPUT_ERROR", EXIT_INPUT
    if isinstance(error, ValueError):
        return "INVALID_ARGUMENT", EXIT_INPUT
    return "RUNTIME_ERROR", EXIT_FAILURE


def handle_error(error: Exception) -> int:
    """Report an error and return the exit status the command should use.

    Outputs a JSON error object to stdout for machine consumption:
    {"error": true, "code": "NUMERIC_ERROR", "message": "...", "hint": "..."}

    Also prints a human-readable error to stderr.
    """
    message = str(error)
    hint = _get_hint(message)
    code, status = _classify(error)

    error_obj: dict[str, object] = {
        "error": True,
        "code": code,
        "message": message,
    }
    if hint:
        error_obj["hint"] = hint

    json.dump(error_obj, sys.stdout)
    sys.stdout.write("\n")

    console.print(f"[red]Error:[/red] {escape(message)}")
    if hint:
        console.print(f"[dim]Hint: {escape(hint)}[/dim]")
    return status
