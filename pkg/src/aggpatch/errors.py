"""Exceptions and warnings shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ConfigError(ValueError):
    """A CLI configuration document is malformed or inconsistent."""


class VerificationError(RuntimeError):
    """A verification run exceeded its certified tolerance."""


class CollisionError(RuntimeError):
    """Two particles crossed within one integration step."""

    def __init__(self, step: int, message: str = ""):
        self.step = step
        super().__init__(message or f"particle order violated at step {step}")


class NearCoincidenceWarning(UserWarning):
    """Two computed atoms are closer than the roundoff reporting threshold."""


class NonInvertibleMeasureWarning(UserWarning):
    """The constructed initial set cannot reproduce the requested atoms."""
