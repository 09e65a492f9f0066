"""Exception types shared across the package."""


class EquicharError(Exception):
    """Base class for every error this package raises deliberately."""


class DimensionMismatch(EquicharError):
    """Matrix shapes are incompatible with the requested operation."""


class NonUnimodularGenerator(EquicharError):
    """A generator does not have determinant +1 or -1."""


class OrderCapExceeded(EquicharError):
    """Group closure grew past the configured order cap."""


class GroupMismatch(EquicharError):
    """Two class functions live on different groups."""


class NotASubgroup(EquicharError):
    """An element subset is not closed under the group operation."""


class ValidationFailed(EquicharError):
    """A character table failed a structural validation check."""

    def __init__(self, relation: str, detail: str = ""):
        self.relation = relation
        msg = f"character table validation failed: {relation}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class PrimeSearchFailed(EquicharError):
    """No suitable prime was found for the modular character computation."""


class NoMatch(EquicharError):
    """A class function does not match any table row."""


class NonRationalCoefficient(EquicharError):
    """A coefficient that must be rational failed to reduce; the character
    table and the group data are inconsistent."""


class NotLinearCharacter(EquicharError):
    """The requested operation needs a degree-1 character."""


class NotACharacter(EquicharError):
    """A class function expected to be a character row is not in the table."""


class EnumerationCapExceeded(EquicharError):
    """q**rank exceeds the point-enumeration guardrail."""


class UnknownExample(EquicharError):
    """No built-in problem with the requested name."""


class ParseError(EquicharError):
    """An input file could not be read or decoded."""


class ValidationError(EquicharError):
    """An input file decoded fine but violates the problem schema."""
