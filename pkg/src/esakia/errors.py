"""Exception types shared by every module.

Negative verdicts in this package are returned as data with a witness;
exceptions are reserved for malformed input and violated preconditions.
"""

from __future__ import annotations


class StructureError(ValueError):
    """A structure description is malformed.

    ``path`` locates the offending part of the input (``"tails[1].limit"``).
    """

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class OrderError(StructureError):
    pass


class BoundExceeded(ValueError):
    pass


class NotALattice(StructureError):
    def __init__(self, message: str, witness: tuple[int, int] | None = None):
        self.witness = witness
        super().__init__(message)


class NoResidual(ArithmeticError):
    """``a -> b`` does not exist; carries the pair."""

    def __init__(self, a: int, b: int):
        self.a = a
        self.b = b
        super().__init__(f"no residual for ({a}, {b})")


class NotAFrame(StructureError):
    pass


class SpaceMismatch(ValueError):
    pass


class InvariantViolation(AssertionError):
    """A computed verdict contradicts a containment that must always hold."""
