"""Exception hierarchy shared by all modules."""


class SaitoError(Exception):
    """Base class for every error raised by this package."""


class GroupTooLarge(SaitoError):
    pass


class DomainMismatch(SaitoError):
    pass


class PairingInconsistent(SaitoError):
    pass


class MalformedEnhancedSet(SaitoError):
    pass


class NotInB1(SaitoError):
    pass


class NotIntegral(SaitoError):
    pass


class InternalInconsistency(SaitoError):
    """An identity that holds for all valid input has failed: a bug, not bad input."""


class ParseError(SaitoError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotSquare(ParseError):
    pass


class Degenerate(ParseError):
    pass
