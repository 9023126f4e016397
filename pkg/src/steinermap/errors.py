"""Exception types raised across the package."""


class SteinerMapError(Exception):
    pass


class DisconnectedTarget(SteinerMapError):
    """Some pair of target nodes is unreachable."""


class SizeLimitTooLarge(SteinerMapError):
    """The Steiner subset table would exceed the configured memory budget."""


class InvalidBlock(SteinerMapError, ValueError):
    pass


class InfeasibleBalance(SteinerMapError):
    """No assignment can satisfy the balance constraint."""


class EmptyRegion(SteinerMapError):
    """A block pair shares no cut net, so there is no region to refine."""


class TooLarge(SteinerMapError):
    """An enumeration oracle was asked for an instance above its bound."""


class LengthMismatch(SteinerMapError, ValueError):
    pass


class FormatError(SteinerMapError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MalformedHeader(FormatError):
    pass


class PinOutOfRange(FormatError):
    pass


class EmptyNet(FormatError):
    pass


class AsymmetricEdge(FormatError):
    pass


class Disconnected(FormatError, DisconnectedTarget):
    pass
