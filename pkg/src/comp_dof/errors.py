"""Shared exception types."""


class InvalidDimensions(ValueError):
    """A size or order parameter is outside its allowed range."""


class IndexOutOfRange(IndexError):
    """A 1-based node index falls outside [1, K]."""


class ParseError(ValueError):
    """A document is malformed; the message names the offending field."""


class Infeasible(RuntimeError):
    """No beam satisfies the requested cancellation constraints."""

    def __init__(self, msg: str, message_index: int | None = None):
        super().__init__(msg)
        self.message_index = message_index


class Disconnected(Infeasible):
    """The intended receiver hears none of the chosen transmitters."""


class TooLarge(ValueError):
    """Instance exceeds the desk-scale guard for exhaustive search."""
