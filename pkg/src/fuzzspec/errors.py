"""Exception taxonomy shared by all fuzzspec modules.

The CLI maps these onto exit codes: validation-type errors exit 1,
numeric failures exit 2, usage errors exit 64.
"""


class FuzzspecError(Exception):
    """Base class for all fuzzspec errors."""


class ValidationError(FuzzspecError):
    """Malformed input: broken invariants, bad file contents, bad arguments."""


class DomainError(ValidationError):
    """Input outside the mathematical domain of an operation."""


class PreconditionError(ValidationError):
    """A documented operation precondition does not hold."""


class InvalidSequenceError(ValidationError):
    """A coefficient sequence is not the spectrum of any fuzzy set."""


class NumericError(FuzzspecError):
    """Numerical failure: non-convergence, ill-conditioning, off-circle roots.

    Carries an optional residual estimate describing how far the
    computation got.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class ReconstructionError(NumericError):
    """The defuzzification pipeline could not produce a valid arc system."""


class UnsupportedError(FuzzspecError):
    """Requested feature is not available for this input family."""
