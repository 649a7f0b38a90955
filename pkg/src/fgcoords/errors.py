"""Error types with stable codes.

Validation errors describe malformed input and map to CLI exit code 1.
Computation errors describe a failure while evaluating valid input and map
to exit code 2.
"""


class FGError(Exception):
    """Base class. ``code`` is a short stable identifier like ``DUPLICATE_SLOT``."""

    exit_code = 2

    def __init__(self, code: str, message: str = ""):
        self.code = code
        self.message = message or code
        super().__init__(f"{code}: {self.message}")


class ValidationError(FGError):
    exit_code = 1


class ComputationError(FGError):
    exit_code = 2
