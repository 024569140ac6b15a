class VsetError(Exception):
    pass


class DomainError(VsetError, ValueError):
    """An argument lies outside the domain of the operation."""


class FormatError(VsetError, ValueError):
    """Malformed input text (automaton, SLP, expression, rooting file)."""


class AccessRangeError(VsetError, IndexError):
    """Answer index outside [1, total]."""

    def __init__(self, t, total):
        super().__init__(f"index {t} out of range: there are {total} answers")
        self.t = t
        self.total = total


class EditIndexError(VsetError, IndexError):
    """Invalid position inside a string-editing expression."""


class SizeError(VsetError, ValueError):
    pass
