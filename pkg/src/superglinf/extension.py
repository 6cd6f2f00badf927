"""One-dimensional central extension by the cocycle str([a,b]J)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import SuperMatrix, as_scalar, bracket


def j_sign(i: int) -> int:
    """Diagonal of J: +1 on negative indices, -1 on nonnegative ones."""
    return 1 if i < 0 else -1


def cocycle(a: SuperMatrix, b: SuperMatrix) -> Fraction:
    c = bracket(a, b)
    p = c.parity
    total = Fraction(0)
    for (i, j), v in c.entries.items():
        if i == j:
            total += (-v if p(i) else v) * j_sign(i)
    return total


@dataclass(frozen=True)
class ExtendedElement:
    """``mat + z * (central generator)``; the grading is that of ``mat``."""

    mat: SuperMatrix
    z: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "z", as_scalar(self.z))

    def __add__(self, other: ExtendedElement) -> ExtendedElement:
        return ExtendedElement(self.mat + other.mat, self.z + other.z)

    def __sub__(self, other: ExtendedElement) -> ExtendedElement:
        return ExtendedElement(self.mat - other.mat, self.z - other.z)

    def __mul__(self, c) -> ExtendedElement:
        c = as_scalar(c)
        return ExtendedElement(self.mat * c, self.z * c)

    __rmul__ = __mul__

    def degree(self):
        return self.mat.degree()


def extended_bracket(x: ExtendedElement, y: ExtendedElement) -> ExtendedElement:
    return ExtendedElement(bracket(x.mat, y.mat), cocycle(x.mat, y.mat))
