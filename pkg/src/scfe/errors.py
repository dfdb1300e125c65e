class ScfeError(Exception):
    """Base class for errors raised by this package."""


class InvalidInput(ScfeError, ValueError):
    """Malformed or inconsistent input: unknown ids, bad offsets, schema violations."""


class ModelMismatch(ScfeError):
    """A ball model does not realise the graph it was supposed to realise."""

    def __init__(self, message: str, discrepancies=()):
        super().__init__(message)
        self.discrepancies = list(discrepancies)


class InvalidDrawing(ScfeError):
    """A drawing violates the friends-closer-than-enemies condition."""

    def __init__(self, message: str, violations=()):
        super().__init__(message)
        self.violations = list(violations)


class TransformStuck(ScfeError):
    """A model transformation found no admissible move."""
