"""Exception hierarchy shared by all modules."""


class QcError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(QcError, ValueError):
    """Inputs violate an operation's preconditions."""


class DegreeMismatchError(ParameterError):
    """Field elements or matrices from different extension degrees were mixed."""


class DimensionError(ParameterError):
    """Matrix or vector shapes are incompatible."""


class FieldDivisionError(QcError, ZeroDivisionError):
    """Inversion of the zero field element."""


class RankError(QcError, ValueError):
    """A full-rank matrix was required."""


class NoSolutionError(QcError, ValueError):
    """A linear system is inconsistent."""


class WeightError(ParameterError):
    """A vector has the wrong Hamming weight."""


class DuplicatePointError(ParameterError):
    pass


class InvalidPointError(ParameterError):
    pass


class ResourceBoundError(QcError):
    """A configured enumeration or table bound would be exceeded."""


class RetryError(QcError):
    """A randomized construction ran out of candidates; retry with another seed."""


class NotFoundError(QcError):
    """A bounded search finished without a result."""


class StructureError(QcError):
    """A matrix lacks the structure an enumeration relies on (e.g. repeated columns)."""


class GroupError(QcError, ValueError):
    """A permutation set is not a group."""


class CapacityError(QcError):
    """The requested error weight exceeds what the private decoder can correct."""


class DecodingFailure(QcError):
    """No error pattern of weight at most t matches the syndrome."""


class InvalidCiphertextError(DecodingFailure):
    """Decryption failed because the ciphertext does not decode."""
