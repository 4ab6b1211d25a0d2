"""Exception hierarchy shared by every stacksp module."""


class StackSPError(Exception):
    """Base class for all errors raised by this package."""


class InputError(StackSPError, ValueError):
    """Malformed instance, pricing or file content."""


class InvalidParams(InputError):
    """Generator parameters outside their admissible range."""


class NoPath(StackSPError):
    """The sink is unreachable once infinitely priced edges are removed."""


class Unbounded(StackSPError):
    """Every source-sink path uses a pricable edge, so revenue has no maximum."""


class TooLarge(StackSPError):
    """An enumeration limit was exceeded."""


class InequalityViolated(StackSPError, AssertionError):
    """A shortest-path comparison that must hold by optimality failed.

    ``index`` is the position in the significant-gadget list.
    """

    def __init__(self, name, index, lhs, rhs):
        self.name = name
        self.index = index
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(f"{name} violated at significant position {index}: {lhs} > {rhs}")
