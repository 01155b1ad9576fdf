"""Shared exception types."""


class ShapeError(ValueError):
    """Operands have incompatible or invalid shapes."""


class ValidationError(ValueError):
    """Input data violates a structural contract."""


class StateError(RuntimeError):
    """Operation invoked in an invalid order (e.g. backward before forward)."""


class TrainingError(RuntimeError):
    """Training failed irrecoverably (e.g. loss diverged)."""

    def __init__(self, message: str, epoch: int | None = None):
        super().__init__(message)
        self.epoch = epoch


class ConfigError(ValueError):
    """Run configuration is missing, malformed, or inconsistent."""
