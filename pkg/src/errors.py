"""Exception hierarchy for the phi engine."""
from typing import Optional


class PhiError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(PhiError):
    """Configuration file present but unusable."""


class Graph6FormatError(PhiError, ValueError):
    """Malformed graph6 input."""

    def __init__(self, message: str, text: Optional[str] = None):
        self.text = text
        if text is not None:
            message = f"{message} (input: {text!r})"
        super().__init__(message)


class InvalidVertexError(PhiError, ValueError):
    """Vertex arguments violate an operation's precondition."""


class InvalidChordError(PhiError, ValueError):
    """Chord diagram arguments violate an operation's precondition."""


class SizeGuardError(PhiError):
    """An exponential evaluator was asked to run above its configured limit.

    Carries enough structure for the CLI to report the refusal instead of
    crashing: which evaluator, what was measured, and the limit.
    """

    def __init__(self, evaluator: str, quantity: str, size: int, limit: int):
        self.evaluator = evaluator
        self.quantity = quantity
        self.size = size
        self.limit = limit
        super().__init__(
            f"{evaluator}: {quantity}={size} exceeds guard {limit} "
            f"(raise guards.{evaluator}_max_{quantity} in config.yaml to override)"
        )

    def as_dict(self) -> dict:
        return {
            "evaluator": self.evaluator,
            "quantity": self.quantity,
            "size": self.size,
            "limit": self.limit,
            "message": str(self),
        }
