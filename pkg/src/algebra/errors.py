from __future__ import annotations


class NambuError(RuntimeError):
    """Base error of the Nambu engine."""

    exit_code = 3


class ParseError(NambuError):
    """Raised when a polynomial, problem file or resolvent file cannot be read."""

    exit_code = 1


class PreconditionError(NambuError):
    exit_code = 2


class OddArity(PreconditionError):
    """Raised when an operation needs an even arity."""


class MissingGrading(PreconditionError):
    """Raised when a degree-sliced solve runs without internal weights."""


class TruncationTooShallow(PreconditionError):
    """Raised when the resolvent truncation level is below the requested step."""


class ConfigurationError(PreconditionError):
    pass


class InvalidInput(PreconditionError):
    pass


class MathematicalFailure(NambuError):
    exit_code = 3


class NotInIdeal(MathematicalFailure):
    pass


class NotNambuIdeal(MathematicalFailure):
    """Raised with the first bracket {x_I, f_mu} that leaves the ideal."""

    def __init__(self, indices: tuple[int, ...], generator: int, remainder: str) -> None:
        self.indices = indices
        self.generator = generator
        self.remainder = remainder
        joined = ",".join(str(i) for i in indices)
        super().__init__(
            f"{{x_{joined}, f_{generator}}} is not in the ideal (normal form {remainder})"
        )


class NotNambuTensor(MathematicalFailure):
    pass


class NoPreimage(MathematicalFailure):
    """Raised when a differential equation has no solution in the searched slice."""


class ClosednessFailure(MathematicalFailure):
    pass


class ResourceCapError(NambuError):
    exit_code = 4


class CapTooLow(ResourceCapError):
    """Raised when homology appears just above the internal degree cap."""
