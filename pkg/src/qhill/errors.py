"""Exception types shared by every module.

Each class carries a short ``name`` that the CLI echoes in its error line,
so scripts can match on it without parsing prose.
"""


class QHillError(Exception):
    name = "error"


class InvalidModulus(QHillError, ValueError):
    name = "invalid-modulus"


class InvalidArgument(QHillError, ValueError):
    name = "invalid-argument"


class NotInvertible(QHillError, ValueError):
    name = "not-invertible"


class InvalidRange(QHillError, ValueError):
    name = "invalid-range"


class SequenceOverflow(QHillError, OverflowError):
    name = "overflow"


class DimensionMismatch(QHillError, ValueError):
    name = "dimension-mismatch"


class ModulusMismatch(QHillError, ValueError):
    name = "modulus-mismatch"


class LambdaPolicyError(QHillError, ValueError):
    """A derived matrix order fell outside the accepted window.

    ``lam`` holds the offending value so a sender can report it and retry
    with another ephemeral exponent.
    """

    name = "lambda-policy"

    def __init__(self, lam, message):
        super().__init__(message)
        self.lam = lam


class LambdaDegenerate(LambdaPolicyError):
    name = "lambda-degenerate"


class LambdaTooLarge(LambdaPolicyError):
    name = "lambda-too-large"


class UnmappedCharacter(QHillError, ValueError):
    name = "unmapped-character"

    def __init__(self, char, position):
        super().__init__(f"character {char!r} at position {position} is not in the alphabet")
        self.char = char
        self.position = position


class ValueOutOfRange(QHillError, ValueError):
    name = "value-out-of-range"


class MalformedEnvelope(QHillError, ValueError):
    name = "malformed-envelope"


class InsufficientPairs(QHillError, ValueError):
    name = "insufficient-pairs"
