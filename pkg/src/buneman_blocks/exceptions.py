"""Exception hierarchy.

Every error raised on purpose by this package derives from
:class:`BunemanError`.  Errors raised while parsing a split file carry the
offending line number in ``line``.
"""


class BunemanError(Exception):
    """Base class for all package errors."""

    def __init__(self, message="", *, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGroundSet(BunemanError, ValueError):
    pass


class UnknownElement(BunemanError, KeyError):
    def __str__(self):
        # KeyError.__str__ would repr() the message
        return Exception.__str__(self)


class ImproperSplit(BunemanError, ValueError):
    pass


class DuplicateSplit(BunemanError, ValueError):
    pass


class SplitFileSyntaxError(BunemanError, ValueError):
    pass


class GroundSetMismatch(BunemanError, ValueError):
    pass


class SystemMismatch(BunemanError, ValueError):
    pass


class IncompatiblePair(BunemanError, ValueError):
    pass


class IdenticalSplits(BunemanError, ValueError):
    pass


class SplitInComponent(BunemanError, ValueError):
    pass


class UnknownComponent(BunemanError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class SameComponent(BunemanError, ValueError):
    pass


class IdenticalVertices(BunemanError, ValueError):
    pass


class NotAVertex(BunemanError, ValueError):
    pass


class EmptySubset(BunemanError, ValueError):
    pass


class CapExceeded(BunemanError, ValueError):
    pass


class IsolatedVertex(BunemanError, ValueError):
    """A relation graph has an isolated vertex; ``side`` is ``"U"`` or ``"V"``."""

    def __init__(self, side, index):
        self.side = side
        self.index = index
        super().__init__(f"isolated vertex {index} on side {side}")


class M1Violation(BunemanError, ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"(M1) fails for u1, u2, v = {witness}")


class M2Violation(BunemanError, ValueError):
    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"(M2) fails for u, v1, v2 = {witness}")


class InternalInconsistency(BunemanError, AssertionError):
    """A verified postcondition failed.  Never expected; indicates a bug."""


class DegenerateTree(BunemanError, AssertionError):
    pass
