"""Independent brute-force references used across the test suite.

Nothing here imports the library's algorithms; inputs are plain dicts,
lists and callables.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def dense_bracket(a: dict, b: dict, p, lo: int, hi: int) -> dict:
    """Full double loop over [lo, hi] with the twisted sign table."""
    n = hi - lo + 1
    A = [[Fraction(0)] * n for _ in range(n)]
    B = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in a.items():
        A[i - lo][j - lo] = Fraction(v)
    for (i, j), v in b.items():
        B[i - lo][j - lo] = Fraction(v)
    par = [p(lo + t) for t in range(n)]
    out = {}
    for i in range(n):
        for j in range(n):
            s = Fraction(0)
            for k in range(n):
                s += A[i][k] * B[k][j]
                sign = (-1) ** ((par[i] + par[k]) * (par[j] + par[k]))
                s -= sign * B[i][k] * A[k][j]
            if s:
                out[(i + lo, j + lo)] = s
    return out


def dense_supertrace_J(c: dict, p) -> Fraction:
    total = Fraction(0)
    for (i, j), v in c.items():
        if i == j:
            total += (-1) ** p(i) * v * (1 if i < 0 else -1)
    return total


def brute_odd(p, a: int, b: int) -> int:
    return sum(1 for i in range(a, b + 1) if p(i) == 1)


def tail_words(window_lo, window, left, right):
    """Plain evaluation of a presentation, anchored at absolute indices."""
    hi = window_lo + len(window) - 1

    def f(i):
        if i < window_lo:
            return left[i % len(left)]
        if i > hi:
            return right[i % len(right)]
        return window[i - window_lo]

    return f


def block_density_range(ratio: int) -> tuple[Fraction, Fraction]:
    """Limit points of prefix densities of alternating blocks of lengths ratio**j.

    At the end of block J the odd blocks contribute a geometric sum; the
    ratio tends to ratio/(ratio+1) after an odd block and 1/(ratio+1) after
    an even one.
    """
    return Fraction(1, ratio + 1), Fraction(ratio, ratio + 1)


def base_words(m: int, n: int) -> set[str]:
    return {"".join(w) for w in set(itertools.permutations("E" * m + "D" * n))}


def finite_orbits(lo: int, hi: int) -> dict[tuple[int, ...], int]:
    """Orbit label of every 0/1 vector on [lo, hi] under permutations of the window.

    Closure by adjacent transpositions, found with a union-find; orbits are
    returned as representative ids.
    """
    n = hi - lo + 1
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    vecs = list(itertools.product((0, 1), repeat=n))
    for v in vecs:
        parent[v] = v
    for v in vecs:
        for t in range(n - 1):
            w = list(v)
            w[t], w[t + 1] = w[t + 1], w[t]
            a, b = find(v), find(tuple(w))
            if a != b:
                parent[a] = b
    return {v: hash(find(v)) for v in vecs}


def loop_dense_bracket(x_get, y_get, p, lo: int, hi: int, band: int) -> dict:
    """Bracket of two infinite band matrices read on [lo, hi] x [lo, hi].

    Entries whose sums would leave the truncation are only exact for rows
    and columns at distance > 2*band from the edges.
    """
    out = {}
    for i in range(lo, hi + 1):
        for j in range(max(lo, i - 2 * band), min(hi, i + 2 * band) + 1):
            s = Fraction(0)
            for k in range(max(lo, i - band), min(hi, i + band) + 1):
                s += x_get(i, k) * y_get(k, j)
                sign = (-1) ** ((p(i) + p(k)) * (p(j) + p(k)))
                s -= sign * y_get(i, k) * x_get(k, j)
            if s:
                out[(i, j)] = s
    return out
