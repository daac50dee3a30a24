"""Exception hierarchy.

``InputError`` subclasses signal malformed input (CLI exit code 2);
``PreconditionError`` subclasses signal a well-formed request the theory
refuses (CLI exit code 3).
"""


class NBAError(Exception):
    """Base class for every error raised by this package."""


class InputError(NBAError, ValueError):
    """Malformed or inconsistent input."""


class GeometryError(InputError):
    """Invalid box, primitive or region."""


class FamilyError(InputError):
    """A set is not representable in the model's family (or dimensions differ)."""


class ModelError(InputError):
    """Malformed measure model."""


class PreconditionError(NBAError):
    """A precondition of the requested construction fails.

    ``citation`` names the result that explains the refusal.
    """

    def __init__(self, message: str, citation: str | None = None):
        super().__init__(message)
        self.citation = citation


class NotFoundError(NBAError):
    """A bounded search ran out of levels; ``best`` carries the best error seen."""

    def __init__(self, message: str, best=None, level=None):
        super().__init__(message)
        self.best = best
        self.level = level


class CostGuardError(PreconditionError):
    """A brute-force oracle was asked for more work than its guard allows."""
