"""Exception hierarchy. Every error carries a machine-readable ``kind``."""


class SignCertError(Exception):
    kind = "error"


class ModeError(SignCertError, TypeError):
    kind = "mode"


class DomainError(SignCertError, ValueError):
    kind = "domain"


class NotPositiveError(DomainError):
    """The polynomial has a positive root, so no positivity certificate exists."""

    kind = "not_positive"


class PrecisionError(SignCertError, ArithmeticError):
    """A sign could not be decided at the current working precision."""

    kind = "precision"


class ClassificationError(PrecisionError):
    kind = "classification"


class ConvergenceError(SignCertError, ArithmeticError):
    kind = "convergence"


class ConsistencyError(SignCertError, AssertionError):
    kind = "consistency"


class GenerationError(SignCertError, ValueError):
    kind = "generation"


class InputError(SignCertError, ValueError):
    kind = "input"

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset
