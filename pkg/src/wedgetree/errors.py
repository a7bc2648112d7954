"""Exception hierarchy shared by every module of the package."""


class WedgeError(Exception):
    """Base class for all errors raised by wedgetree."""


# ordinal arithmetic
class RangeExceeded(WedgeError, ArithmeticError):
    pass


class Underflow(WedgeError, ArithmeticError):
    pass


class NotOmegaCofinal(WedgeError, ValueError):
    pass


# trees and nodes
class MalformedPath(WedgeError, ValueError):
    pass


class MalformedSpec(WedgeError, ValueError):
    pass


class NotANode(WedgeError, ValueError):
    pass


class HeightExceeded(WedgeError, ValueError):
    pass


# topology
class MalformedSet(WedgeError, ValueError):
    pass


class BadDepth(WedgeError, ValueError):
    pass


class BadExclusion(WedgeError, ValueError):
    pass


# skeletons
class StarViolated(WedgeError, ValueError):
    pass


class NonTermination(WedgeError, RuntimeError):
    pass


class NotComparable(WedgeError, ValueError):
    pass


class NotAChain(WedgeError, ValueError):
    pass


class NotInSet(WedgeError, ValueError):
    pass


# valdivia
class HeightTooLarge(WedgeError, ValueError):
    pass


class SamePoint(WedgeError, ValueError):
    pass


# oracle
class BoundExceeded(WedgeError, ValueError):
    pass


class NotMeetClosed(WedgeError, ValueError):
    pass


class NotFinite(WedgeError, ValueError):
    pass


# script language
class ScriptSyntaxError(WedgeError, SyntaxError):
    def __init__(self, message, line=0, column=0):
        super().__init__(f"{message} (line {line}, column {column})")
        self.msg = message
        self.line = line
        self.column = column

    def __str__(self):
        # SyntaxError would print only ``msg``; keep the position visible
        return self.args[0]


class UnboundName(WedgeError, NameError):
    pass
