"""k-periodic band matrices and their loop-algebra realization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Mapping

from .core import ParityFunction, SuperMatrix, as_scalar
from .errors import ParityMismatchError, PreconditionError

Cell = tuple[int, int]
TypeTag = Literal["A", "B"]


def _period_check_range(p: ParityFunction, k: int) -> range:
    span = 2 * math.lcm(k, len(p.left_tail), len(p.right_tail))
    return range(p.window_lo - span, p.window_hi + span + 1)


def parity_type(p: ParityFunction, k: int) -> TypeTag | None:
    """'A' if p(i) = p(i+k) everywhere, 'B' if p(i) = p(i+k) + 1, else None."""
    shifts = {(p(i) + p(i + k)) % 2 for i in _period_check_range(p, k)}
    if shifts == {0}:
        return "A"
    if shifts == {1}:
        return "B"
    return None


@dataclass(frozen=True)
class PeriodicBandMatrix:
    """a_{i+k, j+k} = a_ij, stored by the cells (r, j) with 0 <= r < k and |r - j| <= band."""

    k: int
    band: int
    parity: ParityFunction
    type_tag: TypeTag
    cells: Mapping[Cell, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.k < 1 or self.band < 0:
            raise PreconditionError("need k >= 1 and band >= 0")
        clean = {}
        for (r, j), v in dict(self.cells).items():
            v = as_scalar(v)
            if not 0 <= r < self.k:
                raise PreconditionError(f"row {r} outside 0..{self.k - 1}")
            if abs(r - j) > self.band:
                raise PreconditionError(f"cell ({r}, {j}) outside band {self.band}")
            if v:
                clean[(r, j)] = v
        object.__setattr__(self, "cells", clean)
        actual = parity_type(self.parity, self.k)
        if actual != self.type_tag:
            want = "k-periodic" if self.type_tag == "A" else "k-antiperiodic"
            raise PreconditionError(f"type {self.type_tag} needs a {want} parity function")

    def __getitem__(self, ij: Cell) -> Fraction:
        i, j = ij
        r = i % self.k
        return self.cells.get((r, j - (i - r)), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PeriodicBandMatrix):
            return NotImplemented
        return (self.k, self.parity, self.type_tag, self.cells) == (
            other.k, other.parity, other.type_tag, other.cells)

    def __hash__(self):
        return hash((self.k, self.type_tag, frozenset(self.cells.items())))

    def actual_band(self) -> int:
        return max((abs(r - j) for r, j in self.cells), default=0)

    def truncate(self, lo: int, hi: int) -> SuperMatrix:
        """Finite matrix of the entries with both indices in [lo, hi]."""
        out = {}
        for i in range(lo, hi + 1):
            r = i % self.k
            for (rr, j), v in self.cells.items():
                if rr == r and lo <= j + (i - r) <= hi:
                    out[(i, j + (i - r))] = v
        return SuperMatrix(self.parity, out)

    def __add__(self, other: PeriodicBandMatrix) -> PeriodicBandMatrix:
        _check_same(self, other)
        cells = dict(self.cells)
        for c, v in other.cells.items():
            cells[c] = cells.get(c, 0) + v
        return PeriodicBandMatrix(self.k, max(self.band, other.band), self.parity, self.type_tag, cells)

    def __mul__(self, c) -> PeriodicBandMatrix:
        c = as_scalar(c)
        return PeriodicBandMatrix(self.k, self.band, self.parity, self.type_tag,
                                  {cell: c * v for cell, v in self.cells.items()})

    __rmul__ = __mul__


def _check_same(x: PeriodicBandMatrix, y: PeriodicBandMatrix) -> None:
    if x.k != y.k:
        raise PreconditionError(f"periods differ: {x.k} vs {y.k}")
    if x.type_tag != y.type_tag:
        raise PreconditionError("type tags differ")
    if x.parity != y.parity:
        raise ParityMismatchError("operands use different parity functions")


def periodic_bracket(x: PeriodicBandMatrix, y: PeriodicBandMatrix) -> PeriodicBandMatrix:
    """The super bracket computed on the row representatives 0..k-1."""
    _check_same(x, y)
    p, k = x.parity, x.k
    out: dict[Cell, Fraction] = {}

    def row(m: PeriodicBandMatrix, i: int):
        r = i % m.k
        return [(j + i - r, v) for (rr, j), v in m.cells.items() if rr == r]

    for r in range(k):
        for mid, a in row(x, r):
            for j, b in row(y, mid):
                out[(r, j)] = out.get((r, j), 0) + a * b
        for mid, b in row(y, r):
            for j, a in row(x, mid):
                sign = (p(r) + p(mid)) * (p(j) + p(mid)) % 2
                out[(r, j)] = out.get((r, j), 0) + (b * a if sign else -b * a)
    return PeriodicBandMatrix(k, x.band + y.band, p, x.type_tag, out)


# ---------------------------------------------------------------------------
# Laurent polynomials and loop matrices


@dataclass(frozen=True)
class LaurentPoly:
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {e: as_scalar(c) for e, c in dict(self.coeffs).items()
                                            if as_scalar(c)})

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.coeffs.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        out: dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for e in sorted(self.coeffs):
            c = self.coeffs[e]
            mag = abs(c)
            num = str(mag) if mag.denominator == 1 else f"({mag})"
            if e == 0:
                body = num
            else:
                var = "t" if e == 1 else f"t^{e}"
                body = var if mag == 1 else num + var
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


LaurentMatrix = tuple[tuple[LaurentPoly, ...], ...]


def to_loop(x: PeriodicBandMatrix) -> LaurentMatrix:
    """M_{r,s}(t) with t^d coefficient a_{r, s + d k}."""
    if x.type_tag != "A":
        raise PreconditionError("to_loop needs a type-A (k-periodic parity) matrix")
    k = x.k
    grid = [[{} for _ in range(k)] for _ in range(k)]
    for (r, j), v in x.cells.items():
        d, s = divmod(j, k)
        grid[r][s][d] = v
    return tuple(tuple(LaurentPoly(c) for c in row) for row in grid)


def from_loop(M: LaurentMatrix, parity: ParityFunction) -> PeriodicBandMatrix:
    k = len(M)
    cells = {(r, s + d * k): c for r in range(k) for s in range(k) for d, c in M[r][s].coeffs.items()}
    band = max((abs(r - j) for r, j in cells), default=0)
    return PeriodicBandMatrix(k, band, parity, "A", cells)


def loop_bracket(M: LaurentMatrix, N: LaurentMatrix, residues: tuple[int, ...]) -> LaurentMatrix:
    """Matrix super bracket over Laurent polynomials, rows graded by ``residues``."""
    k = len(M)
    if len(residues) != k:
        raise PreconditionError("one parity per residue is required")
    out = []
    for r in range(k):
        row = []
        for s in range(k):
            acc = LaurentPoly()
            for u in range(k):
                acc = acc + M[r][u] * N[u][s]
                prod = N[r][u] * M[u][s]
                if (residues[r] + residues[u]) * (residues[s] + residues[u]) % 2:
                    acc = acc + prod
                else:
                    acc = acc - prod
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def residue_parities(p: ParityFunction, k: int) -> tuple[int, ...]:
    return tuple(p(r) for r in range(k))


def loop_dimensions(p: ParityFunction, k: int) -> tuple[int, int]:
    """(m, n) = (Even(p; 1, k), Odd(p; 1, k))."""
    return p.count(1, k, 0), p.count(1, k, 1)


def format_loop(M: LaurentMatrix) -> list[list[str]]:
    return [[str(c) for c in row] for row in M]


__all__ = [
    "LaurentMatrix", "LaurentPoly", "PeriodicBandMatrix", "format_loop", "from_loop",
    "loop_bracket", "loop_dimensions", "parity_type", "periodic_bracket", "residue_parities",
    "to_loop",
]
