"""Exceptions raised across the package.

Each class derives from the built-in exception a caller would naturally catch,
so ``except ValueError`` keeps working for argument problems.
"""

from typing import Optional


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class CoefficientFileError(ValueError):
    """A coefficient file could not be parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class ValidationError(ValueError):
    """A coefficient set violates consistency or its declared symmetry."""


class UnknownMethodError(KeyError):
    """A method name is neither in the catalog nor a readable file."""

    def __init__(self, name: str, available):
        self.name = name
        self.available = sorted(available)
        super().__init__(f"unknown method '{name}'; available: {', '.join(self.available)}")

    def __str__(self):
        return self.args[0]


class IntegrationError(RuntimeError):
    """The complexified flow left its analyticity domain."""

    def __init__(self, message: str, step_index: Optional[int] = None, state=None):
        self.step_index = step_index
        self.state = state
        self.reason = message
        if step_index is not None:
            message = f"step {step_index}: {message}"
        super().__init__(message)

    def at_step(self, step_index: int) -> "IntegrationError":
        """Return a copy tagged with the step index it occurred at."""
        return IntegrationError(self.reason, step_index=step_index, state=self.state)


class ConvergenceError(RuntimeError):
    """Newton iteration failed to reach the requested residual."""
