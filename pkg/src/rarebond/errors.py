"""Exception types raised by the library."""


class RareBondError(Exception):
    """Base class for all library errors."""


class FimiParseError(RareBondError):
    """Malformed FIMI input (carries the 1-based line number)."""

    def __init__(self, message, line_number=None):
        super().__init__(message)
        self.line_number = line_number


class EmptyDatabaseError(RareBondError):
    """No usable transactions, or an empty item universe."""


class UnknownItemError(RareBondError, KeyError):
    """An item does not occur in the database."""


class UndefinedMeasureError(RareBondError):
    """bond is undefined (disjunctive support is zero)."""


class UndefinedClosureError(RareBondError):
    """Closure requested for a pattern of zero conjunctive support."""


class CapacityError(RareBondError):
    """Exhaustive oracle asked for an item universe it cannot enumerate."""


class RepresentationKindError(RareBondError):
    """Operation applied to a representation of the wrong kind."""


class RepresentationConsistencyError(RareBondError):
    """Representation does not match the database or parameters supplied."""


class CorruptRepresentationError(RareBondError):
    """Stored representation violates its own structural guarantees."""
