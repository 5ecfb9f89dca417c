"""Exception hierarchy shared by all modules."""


class AutocatError(Exception):
    """Base class for every error raised by this package."""


class InvalidIndexError(AutocatError, IndexError):
    """An entity or reaction index is outside the network."""


class InvalidChildSelectionError(AutocatError, ValueError):
    """A mapping is not a valid child-selection for the network."""


class NotSquareError(AutocatError, ValueError):
    pass


class NotSemipositiveError(AutocatError, ValueError):
    pass


class PreconditionError(AutocatError, ValueError):
    """An operation was called on an input it is not defined for."""


class MatchingConflictError(AutocatError, ValueError):
    """Two superposed parts disagree on the reaction matched to an entity."""

    def __init__(self, message, entity=None, reaction=None):
        super().__init__(message)
        self.entity = entity
        self.reaction = reaction


class ParseError(AutocatError, ValueError):
    """Syntax or semantic error in a reaction file, with its location."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


class OracleBoundsError(AutocatError):
    """The brute-force oracle refuses inputs beyond its configured bounds."""


class BoundsRequiredError(AutocatError, ValueError):
    """The network is too large to search without an explicit bound."""
