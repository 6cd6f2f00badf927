"""Ortho-symplectic, periplectic and queer analogues inside the infinite matrices.

Each kind is the fixed-point set of an involution theta on matrices:

* B, D, pe: theta(a)_ij = -(-1)^(|a_ij| p(j)) (beta_j / beta_i) a_{pi(j), pi(i)},
  the condition that a preserves the supersymmetric form with Gram entries
  beta_i on the pairs (i, pi(i)).  pi(i) = -i for B and 1 - i for D and pe.
* q: theta(a) = (-1)^|a| P a P with P_{i, tau(i)} = 1 for a parity-swapping
  involution tau, so the fixed points are the matrices supercommuting with P.

On even-even cells all three form conditions read a_ij = -a_{pi(j), pi(i)}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Literal

from .core import ParityFunction, SuperMatrix
from .errors import PreconditionError, UnsupportedCaseError
from .loops import PeriodicBandMatrix

Kind = Literal["B", "D", "pe", "q"]
KINDS = ("B", "D", "pe", "q")


def default_pairing(i: int) -> int:
    """2r <-> 2r + 1."""
    return i ^ 1


@dataclass(frozen=True)
class InvolutionSpec:
    kind: Kind
    pairing: Callable[[int], int] = default_pairing

    def __post_init__(self):
        if self.kind not in KINDS:
            raise PreconditionError(f"unknown kind {self.kind!r}; expected one of {KINDS}")

    def index_map(self, i: int) -> int:
        if self.kind == "B":
            return -i
        if self.kind in ("D", "pe"):
            return 1 - i
        return self.pairing(i)


def _check_range(p: ParityFunction, extra: int = 0) -> range:
    span = 2 * math.lcm(len(p.left_tail), len(p.right_tail), 2) + extra
    lo = min(p.window_lo, -p.window_hi, 1 - p.window_hi) - span
    hi = max(p.window_hi, -p.window_lo, 1 - p.window_lo) + span
    return range(lo, hi + 1)


def check_compatible(p: ParityFunction, spec: InvolutionSpec, indices=()) -> None:
    """Raise PreconditionError unless p satisfies the constraint of the kind."""
    kind = spec.kind
    test = list(_check_range(p)) + list(indices)
    if kind == "B":
        if p(0) != 0:
            raise PreconditionError("B-type needs p(0) = 0")
        bad = [i for i in test if p(i) != p(-i)]
        if bad:
            raise PreconditionError(f"B-type needs p(i) = p(-i); fails at i = {bad[0]}")
    elif kind == "D":
        bad = [i for i in test if p(i) != p(1 - i)]
        if bad:
            raise PreconditionError(f"D-type needs p(i) = p(1 - i); fails at i = {bad[0]}")
    elif kind == "pe":
        bad = [i for i in test if p(i) == p(1 - i)]
        if bad:
            raise PreconditionError(f"pe-type needs p(i) = p(1 - i) + 1; fails at i = {bad[0]}")
    else:
        tau = spec.pairing
        for i in test:
            t = tau(i)
            if t == i or tau(t) != i:
                raise PreconditionError(f"q-type pairing must be a fixed-point-free involution; fails at {i}")
            if p(t) == p(i):
                raise PreconditionError(f"q-type pairing must swap parities; fails at {i}")


def _beta(kind: str, p: ParityFunction, i: int) -> int:
    if kind == "pe" or p(i) == 0:
        return 1
    if kind == "B":
        return 1 if i > 0 else -1
    return 1 if i >= 1 else -1  # D


def theta_entry(spec: InvolutionSpec, p: ParityFunction,
                get: Callable[[int, int], Fraction], i: int, j: int) -> Fraction:
    """Entry (i, j) of theta(a), reading a through ``get``."""
    deg = (p(i) + p(j)) % 2
    if spec.kind == "q":
        t = spec.pairing
        v = get(t(i), t(j))
        return -v if deg else v
    pi = spec.index_map
    v = get(pi(j), pi(i))
    sign = -1 if deg * p(j) % 2 == 0 else 1
    return sign * Fraction(_beta(spec.kind, p, j), _beta(spec.kind, p, i)) * v


def _theta_cells(spec: InvolutionSpec, a: SuperMatrix) -> dict[tuple[int, int], Fraction]:
    p = a.parity
    pi = spec.index_map
    out = {}
    for (u, v), _ in a.entries.items():
        i, j = pi(v), pi(u)
        if spec.kind == "q":
            i, j = pi(u), pi(v)
        out[(i, j)] = theta_entry(spec, p, lambda r, s: a[(r, s)], i, j)
    return out


def theta(a, spec: InvolutionSpec):
    if isinstance(a, PeriodicBandMatrix):
        return _theta_periodic(a, spec)
    check_compatible(a.parity, spec, a.indices())
    return SuperMatrix(a.parity, _theta_cells(spec, a))


def _theta_periodic(a: PeriodicBandMatrix, spec: InvolutionSpec) -> PeriodicBandMatrix:
    p, k, c = a.parity, a.k, a.band
    check_compatible(p, spec)

    def get(i, j):
        return a[(i, j)]

    def row(i):
        return {j - i: theta_entry(spec, p, get, i, j) for j in range(i - c - 2, i + c + 3)}

    cells = {}
    for r in range(k):
        for off, v in row(r).items():
            if v:
                cells[(r, r + off)] = v
    reach = k * (2 + (max(abs(x) for x in _check_range(p)) // k))
    for i in range(-reach, reach + 1):
        r = i % k
        expect = {off: cells.get((r, r + off), 0) for off in range(-c - 2, c + 3)}
        if row(i) != expect:
            raise UnsupportedCaseError(
                f"{spec.kind}-involution does not commute with the period {k} at row {i}")
    band = max((abs(r - j) for r, j in cells), default=0)
    return PeriodicBandMatrix(k, max(band, c), p, a.type_tag, cells)


def subalgebra_member(a, spec: InvolutionSpec) -> bool:
    return theta(a, spec) == a


def subalgebra_project(a, spec: InvolutionSpec):
    """(a + theta(a)) / 2: idempotent, fixes members, image is the member set."""
    return (a + theta(a, spec)) * Fraction(1, 2)


__all__ = [
    "InvolutionSpec", "KINDS", "check_compatible", "default_pairing", "subalgebra_member",
    "subalgebra_project", "theta", "theta_entry",
]
