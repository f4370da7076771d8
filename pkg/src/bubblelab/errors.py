"""Exception types raised by bubblelab."""


class BubbleLabError(Exception):
    """Base class for all library errors."""


class CollinearInput(BubbleLabError, ValueError):
    """Three points do not span a triangle."""


class NoIntersection(BubbleLabError, ValueError):
    """A horizontal line misses a disk."""


class NoRoot(BubbleLabError, ArithmeticError):
    """A tangency equation has no sign change on its bracket."""


class NoConvergence(BubbleLabError, ArithmeticError):
    """An iterative solver ran out of iterations."""


class DomainError(BubbleLabError, ValueError):
    """Argument outside the domain of a formula."""


class TargetTooSmall(BubbleLabError, ValueError):
    """Requested padding target is below the current point count."""


class StructureMismatch(BubbleLabError, ValueError):
    """Point-set labels do not match the claimed construction."""
