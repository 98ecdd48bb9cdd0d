"""Exception types raised across the package."""


class SdnormError(Exception):
    """Base class for all errors raised by sdnorm."""


class InvalidDiagram(SdnormError):
    def __init__(self, level, reason):
        self.level = level
        self.reason = reason
        super().__init__(f"invalid diagram at vertex {level}: {reason}")


class ExchangeNotAdmissible(SdnormError):
    def __init__(self, side, height):
        self.side = side
        self.height = height
        super().__init__(f"{side} exchange not admissible at height {height}")


class ParseError(SdnormError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownGenerator(SdnormError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown generator {name!r}")


class CompositionMismatch(SdnormError):
    """Raised when the codomain of the inner term differs from the domain of the outer one."""

    def __init__(self, expected, found):
        self.expected = expected
        self.found = found
        super().__init__(f"composition mismatch: expected {expected} wires, found {found}")


class NotBoundaryConnected(SdnormError):
    def __init__(self, what="diagram"):
        super().__init__(f"{what} is not boundary-connected")


class NotConnected(NotBoundaryConnected):
    def __init__(self, what="diagram"):
        SdnormError.__init__(self, f"{what} is not connected")


class StepCapExceeded(SdnormError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"normalization did not terminate within {cap} exchanges")


class NodeCapExceeded(SdnormError):
    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"search explored more than {cap} diagrams")
