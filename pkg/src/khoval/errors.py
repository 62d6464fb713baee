"""Exception hierarchy shared by every layer of the package."""


class KhovalError(Exception):
    """Base class for all errors raised by khoval."""


class ParseError(KhovalError, ValueError):
    """Input text or braid word could not be turned into a diagram."""


class MalformedToken(ParseError):
    def __init__(self, token, reason="unrecognised token"):
        self.token = token
        super().__init__(f"malformed token {token!r}: {reason}")


class EmptyInput(ParseError):
    def __init__(self):
        super().__init__("empty diagram input")


class InconsistentArcs(ParseError):
    pass


class GeneratorOutOfRange(ParseError):
    pass


class EmptyWord(ParseError):
    pass


class OrientationConflict(KhovalError):
    pass


class DisconnectedDiagram(KhovalError):
    pass


class NotApplicable(KhovalError):
    """An invariant formula was asked about a diagram outside its hypotheses."""


class ComplexityBudgetExceeded(KhovalError):
    pass


class DoubleNormalization(KhovalError):
    pass


class NondivisibleEulerCharacteristic(KhovalError):
    """The graded Euler characteristic is not a multiple of q + 1/q.

    This can only happen if the homology computation itself is wrong.
    """
