"""
Error hierarchy for the parcs toolkit.

Precondition failures derive from ValidationError (the CLI maps them to exit
code 1); everything else derived from ParcsError is a runtime failure.
"""


class ParcsError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(ParcsError, ValueError):
    """An input violated a documented precondition."""


class InvalidDimensionError(ValidationError):
    """Dimension below the supported minimum."""


class DimensionUnsupportedError(ValidationError):
    """Dimension not supported by the requested construction (e.g. Haar)."""


class LengthMismatchError(ValidationError):
    """Vector or matrix shapes do not agree."""


class DivisibilityError(ValidationError):
    """A count must divide another (C | n, C | m)."""


class CountTooSmallError(ValidationError):
    """A sensor count is below the construction's minimum."""


class SingularGramError(ValidationError):
    """The Gram average C^-1 sum H_c^* H_c is (numerically) singular."""


class StructureError(ValidationError):
    """Operation undefined for the profile structure."""


class CombinatorialBlowupError(ValidationError):
    """Exhaustive enumeration would exceed the subset guard."""


class EmptySensorError(ValidationError):
    """A sensor was assigned zero measurements."""


class ContainerFormatError(ValidationError):
    """An ensemble file is not a valid container."""


class SolverError(ParcsError):
    """The recovery solver failed for a reason other than bad input."""
