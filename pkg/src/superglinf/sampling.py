"""Seeded random generators for property checks."""

from __future__ import annotations

import random
from fractions import Fraction

from .core import ParityFunction, SuperMatrix
from .loops import PeriodicBandMatrix
from .permutations import FinPermutation, compose, from_mapping, shift, stretch, swap
from .subalgebras import InvolutionSpec, subalgebra_project


def scalar(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 3))


def parity_function(rng: random.Random, max_window: int = 6, max_tail: int = 4) -> ParityFunction:
    def word(n):
        return tuple(rng.randint(0, 1) for _ in range(n))

    return ParityFunction(rng.randint(-5, 5), word(rng.randint(0, max_window)),
                          word(rng.randint(1, max_tail)), word(rng.randint(1, max_tail)))


def inf_parity_function(rng: random.Random) -> ParityFunction:
    """A random presentation whose tails both contain 0 and 1."""
    while True:
        p = parity_function(rng)
        if len(set(p.left_tail)) == 2 and len(set(p.right_tail)) == 2:
            return p


def matrix(rng: random.Random, p: ParityFunction, size: int = 5, span: int = 4,
           degree: int | None = None) -> SuperMatrix:
    """Random finite supermatrix, homogeneous of ``degree`` when given."""
    entries = {}
    attempts = 0
    while len(entries) < size and attempts < 50 * size:
        attempts += 1
        i, j = rng.randint(-span, span), rng.randint(-span, span)
        if degree is not None and (p(i) + p(j)) % 2 != degree:
            continue
        v = scalar(rng)
        if v:
            entries[(i, j)] = v
    return SuperMatrix(p, entries)


def permutation(rng: random.Random) -> FinPermutation:
    """Shifts, finite swaps and their composites, optionally with the stretch."""
    kind = rng.randint(0, 3)
    if kind == 0:
        return shift(rng.randint(-4, 4))
    if kind == 1:
        a, b = rng.sample(range(-6, 7), 2)
        return swap(a, b)
    if kind == 2:
        pts = rng.sample(range(-6, 7), 4)
        perm = pts[:]
        rng.shuffle(perm)
        s = from_mapping(dict(zip(pts, perm)))
        return compose(s, shift(rng.randint(-3, 3)))
    return compose(stretch(), shift(rng.randint(-3, 3)))


def bounded_permutation(rng: random.Random) -> FinPermutation:
    """Bounded-displacement permutations: shifts, swaps and composites."""
    parts = [shift(rng.randint(-4, 4))]
    for _ in range(rng.randint(0, 2)):
        a, b = rng.sample(range(-8, 9), 2)
        parts.append(swap(a, b))
    out = parts[0]
    for s in parts[1:]:
        out = compose(out, s)
    return out


def periodic_matrix(rng: random.Random, p: ParityFunction, k: int, band: int, type_tag: str = "A",
                    density: float = 0.6) -> PeriodicBandMatrix:
    cells = {}
    for r in range(k):
        for j in range(r - band, r + band + 1):
            if rng.random() < density:
                cells[(r, j)] = scalar(rng)
    return PeriodicBandMatrix(k, band, p, type_tag, cells)


def periodic_parity(rng: random.Random, k: int) -> ParityFunction:
    word = "".join(rng.choice("01") for _ in range(k))
    return ParityFunction.periodic(word)


def antiperiodic_parity(rng: random.Random, k: int) -> ParityFunction:
    word = "".join(rng.choice("01") for _ in range(k))
    flipped = "".join("1" if ch == "0" else "0" for ch in word)
    return ParityFunction.periodic(word + flipped)


def member(rng: random.Random, spec: InvolutionSpec, p: ParityFunction, degree: int,
           size: int = 4) -> SuperMatrix:
    return subalgebra_project(matrix(rng, p, size=size, degree=degree), spec)


__all__ = [
    "antiperiodic_parity", "bounded_permutation", "inf_parity_function", "matrix", "member",
    "parity_function", "periodic_matrix", "periodic_parity", "permutation", "scalar",
]
