"""Exception hierarchy shared by every NilSat app.

Malformed user input (equation text, presentation files, elements that do not
belong to a presentation) is reported with ``django.core.exceptions.ValidationError``
instead; the classes below cover failures of the computations themselves.
"""


class NilsatError(Exception):
    """Base class for NilSat computation errors."""


class PreconditionError(NilsatError, ValueError):
    """An operation was called outside its documented domain."""


class DomainError(PreconditionError):
    """A numerical routine was asked for a value it cannot approximate."""


class ResourceBudgetExceeded(NilsatError):
    """The requested work exceeds a configured memory or search budget."""

    def __init__(self, volume, budget, what="computation"):
        self.volume = volume
        self.budget = budget
        super().__init__(
            f"{what} needs volume {volume}, above the configured budget {budget}"
        )


class UnsupportedPresentation(NilsatError, NotImplementedError):
    """The presentation is valid but outside what the builders support."""


class WitnessVerificationError(NilsatError, RuntimeError):
    """A constructed witness failed substitution. Always a bug, never an answer."""
