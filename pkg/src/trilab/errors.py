"""Exception hierarchy shared by every trilab module."""


class TrilabError(Exception):
    """Base class for all errors raised by trilab."""


class ParseError(TrilabError, ValueError):
    pass


class DimensionError(TrilabError, ValueError):
    pass


class EmptySpan(TrilabError, ValueError):
    pass


class TooLarge(TrilabError):
    """An enumeration would exceed its size guard."""


class InvalidTriple(TrilabError, ValueError):
    pass


class InvalidSize(TrilabError, ValueError):
    pass


class InvalidQuery(TrilabError, ValueError):
    pass


class DegenerateInput(TrilabError, ValueError):
    """The input does not span the ambient space."""


class PreconditionError(TrilabError, ValueError):
    pass


class NotFound(TrilabError):
    pass


class Exhausted(TrilabError):
    pass
