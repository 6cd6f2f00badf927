"""Finitely presented permutations of Z and the groups S_c ... S_g.

A :class:`FinPermutation` lists its values on a window ``[lo, hi]``; beyond
the window each tail is a family of arithmetic progressions indexed by the
residue ``r = i mod k``::

    sigma(r + m*k) = c_r + m*s_r

Shifts, finite swaps, ``tau(i) = -i - 1`` and the normalizing permutations of
eventually periodic parity functions all fit this grammar, and it is closed
under composition and inversion.  Inside the grammar displacement is either
bounded or linear, so S_c, S_o and S_n coincide, as do S_m, S_l and S_g.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Literal

from .core import ParityFunction, SuperMatrix
from .errors import NotInGroupError, UnsupportedPermutationError
from .extension import ExtendedElement, j_sign

GroupTag = Literal["Sc", "So", "Sn", "Sm", "Sl", "Sg", "SZ"]
GROUP_TOWER: tuple[GroupTag, ...] = ("Sc", "So", "Sn", "Sm", "Sl", "Sg", "SZ")


@dataclass(frozen=True)
class TailMap:
    period: int
    classes: tuple[tuple[int, int], ...]

    def __post_init__(self):
        k = int(self.period)
        classes = tuple((int(c), int(s)) for c, s in self.classes)
        if k < 1 or len(classes) != k:
            raise UnsupportedPermutationError("a tail needs one (c, s) pair per residue class")
        if any(s == 0 for _, s in classes):
            raise UnsupportedPermutationError("tail slopes must be nonzero")
        k, classes = _reduce_period(k, classes)
        object.__setattr__(self, "period", k)
        object.__setattr__(self, "classes", classes)

    def __call__(self, i: int) -> int:
        r = i % self.period
        c, s = self.classes[r]
        return c + ((i - r) // self.period) * s

    @classmethod
    def linear(cls, offset: int, slope: int) -> TailMap:
        return cls(1, ((offset, slope),))


def _reduce_period(k: int, classes: tuple[tuple[int, int], ...]):
    for d in range(1, k):
        if k % d:
            continue
        q = k // d
        ok = True
        reduced = []
        for r in range(d):
            slopes = {classes[r + j * d][1] for j in range(q)}
            if len(slopes) != 1:
                ok = False
                break
            big = slopes.pop()
            if big % q:
                ok = False
                break
            small = big // q
            c0 = classes[r][0]
            if any(classes[r + j * d][0] != c0 + j * small for j in range(q)):
                ok = False
                break
            reduced.append((c0, small))
        if ok:
            return d, tuple(reduced)
    return k, classes


@dataclass(frozen=True)
class _Progression:
    start: int  # first image value
    step: int  # signed change of the image per domain step
    domain_start: int
    domain_step: int  # +k on the right tail, -k on the left tail


class FinPermutation:
    """A bijection of Z given by a window table and two tail maps.

    Construction verifies bijectivity and canonicalizes the presentation
    (minimal tail periods, minimal window), so ``==`` is pointwise equality.
    """

    __slots__ = ("window_lo", "table", "left", "right", "_inverse_data")

    def __init__(self, window_lo: int, table: Iterable[int], left: TailMap, right: TailMap,
                 *, check: bool = True):
        table = tuple(int(v) for v in table)
        lo, table, left, right = _canonical(int(window_lo), table, left, right)
        self.window_lo = lo
        self.table = table
        self.left = left
        self.right = right
        self._inverse_data = None
        if check:
            self._inverse_data = _analyze(self)

    @property
    def window_hi(self) -> int:
        return self.window_lo + len(self.table) - 1

    def __call__(self, i: int) -> int:
        lo = self.window_lo
        if i < lo:
            return self.left(i)
        if i >= lo + len(self.table):
            return self.right(i)
        return self.table[i - lo]

    def _key(self):
        return (self.window_lo, self.table, self.left, self.right)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinPermutation):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return (f"FinPermutation(lo={self.window_lo}, table={list(self.table)}, "
                f"left={self.left.period}:{list(self.left.classes)}, "
                f"right={self.right.period}:{list(self.right.classes)})")

    def exceptions(self) -> list[tuple[int, int]]:
        return [(self.window_lo + n, v) for n, v in enumerate(self.table)]

    def progressions(self) -> list[_Progression]:
        out = []
        lo, hi = self.window_lo, self.window_hi
        k = self.right.period
        for r in range(k):
            i0 = hi + 1 + ((r - hi - 1) % k)
            out.append(_Progression(self(i0), self.right.classes[r][1], i0, k))
        k = self.left.period
        for r in range(k):
            i1 = lo - 1 - ((lo - 1 - r) % k)
            out.append(_Progression(self(i1), -self.left.classes[r][1], i1, -k))
        return out

    def displacement_bound(self) -> int | None:
        """max |sigma(i) - i| if bounded, else ``None``."""
        for tail in (self.left, self.right):
            if any(s != tail.period for _, s in tail.classes):
                return None
        vals = [abs(v - (self.window_lo + n)) for n, v in enumerate(self.table)]
        for tail in (self.left, self.right):
            vals.extend(abs(c - r) for r, (c, _) in enumerate(tail.classes))
        return max(vals, default=0)


def _canonical(lo: int, table: tuple[int, ...], left: TailMap, right: TailMap):
    hi = lo + len(table) - 1
    first = next((i for i in range(lo, hi + 1) if table[i - lo] != left(i)), None)
    last = next((i for i in range(hi, lo - 1, -1) if table[i - lo] != right(i)), None)
    if first is not None and last is not None and first <= last:
        return first, table[first - lo:last - lo + 1], left, right
    if left == right:
        return 0, (), left, right
    s = lo if last is None else last + 1
    guard = 2 * math.lcm(left.period, right.period) + 2
    steps = 0
    while left(s - 1) == right(s - 1):
        s -= 1
        steps += 1
        if steps > guard:  # the two tails agree everywhere
            return 0, (), right, right
    return s, (), left, right


def _analyze(sigma: FinPermutation):
    """Check bijectivity; return (R, preimage table on [-R, R])."""
    progs = sigma.progressions()
    up = [pg for pg in progs if pg.step > 0]
    down = [pg for pg in progs if pg.step < 0]
    if not up or not down:
        raise UnsupportedPermutationError("images must be unbounded in both directions")
    lcm_up = math.lcm(*(pg.step for pg in up))
    lcm_down = math.lcm(*(-pg.step for pg in down))
    for group, period, name in ((up, lcm_up, "+inf"), (down, lcm_down, "-inf")):
        for x in range(period):
            hits = sum(1 for pg in group if (x - pg.start) % abs(pg.step) == 0)
            if hits != 1:
                raise UnsupportedPermutationError(
                    f"tail progressions do not partition the residues near {name} "
                    f"(residue {x} mod {period} covered {hits} times)")
    R = max([abs(pg.start) for pg in progs] + [abs(v) for v in sigma.table] + [0])
    R += lcm_up + lcm_down + 1
    pre: dict[int, int] = {}
    counts: Counter[int] = Counter()
    for n, v in enumerate(sigma.table):
        if -R <= v <= R:
            counts[v] += 1
            pre[v] = sigma.window_lo + n
    for pg in progs:
        v, i = pg.start, pg.domain_start
        while -R <= v <= R:
            counts[v] += 1
            pre[v] = i
            v += pg.step
            i += pg.domain_step
    bad = [v for v in range(-R, R + 1) if counts[v] != 1]
    if bad:
        v = bad[0]
        raise UnsupportedPermutationError(
            f"not a bijection: value {v} has {counts[v]} preimages")
    return R, pre, up, down, lcm_up, lcm_down


# ---------------------------------------------------------------------------
# constructors

IDENTITY_TAIL = TailMap.linear(0, 1)


def identity() -> FinPermutation:
    return FinPermutation(0, (), IDENTITY_TAIL, IDENTITY_TAIL)


def shift(n: int) -> FinPermutation:
    t = TailMap.linear(n, 1)
    return FinPermutation(0, (), t, t)


def tau() -> FinPermutation:
    """i -> -i - 1, exchanging the two half-lines."""
    t = TailMap.linear(-1, -1)
    return FinPermutation(0, (), t, t)


def swap(a: int, b: int) -> FinPermutation:
    return from_mapping({a: b, b: a})


def from_mapping(mapping: dict[int, int]) -> FinPermutation:
    """Identity outside the keys of ``mapping``."""
    if not mapping:
        return identity()
    lo, hi = min(mapping), max(mapping)
    table = [mapping.get(i, i) for i in range(lo, hi + 1)]
    return FinPermutation(lo, table, IDENTITY_TAIL, IDENTITY_TAIL)


def stretch() -> FinPermutation:
    """Identity on negatives; on i >= 0 sends 3m, 3m+1, 3m+2 to 2m, 4m+1, 4m+3."""
    right = TailMap(3, ((0, 2), (1, 4), (3, 4)))
    return FinPermutation(0, (), IDENTITY_TAIL, right)


def from_function(f: Callable[[int], int], lo: int, hi: int, left_period: int,
                  right_period: int, *, check: bool = True, verify_periods: int = 3) -> FinPermutation:
    """Present ``f`` with an explicit window and tails read off beyond it.

    ``f`` must be affine on each residue class mod the given period beyond
    ``[lo, hi]``; this is re-checked on ``verify_periods`` further periods.
    """
    table = [f(i) for i in range(lo, hi + 1)]
    right = []
    k = right_period
    for r in range(k):
        i1 = hi + 1 + ((r - hi - 1) % k)
        s = f(i1 + k) - f(i1)
        right.append((f(i1) - ((i1 - r) // k) * s, s))
    left = []
    k = left_period
    for r in range(k):
        i1 = lo - 1 - ((lo - 1 - r) % k)
        s = f(i1) - f(i1 - k)
        left.append((f(i1) - ((i1 - r) // k) * s, s))
    lt, rt = TailMap(left_period, tuple(left)), TailMap(right_period, tuple(right))
    for n in range(verify_periods * right_period):
        i = hi + 1 + n
        if rt(i) != f(i):
            raise UnsupportedPermutationError(f"map is not affine on the right tail at {i}")
    for n in range(verify_periods * left_period):
        i = lo - 1 - n
        if lt(i) != f(i):
            raise UnsupportedPermutationError(f"map is not affine on the left tail at {i}")
    return FinPermutation(lo, table, lt, rt, check=check)


# ---------------------------------------------------------------------------
# group operations


def _tail_bounds(sigma: FinPermutation, lo: int, hi: int) -> tuple[int, int]:
    """Window beyond which sigma is in its tails and avoids [lo, hi]."""
    b_lo, b_hi = sigma.window_lo, sigma.window_hi
    for pg in sigma.progressions():
        if pg.step > 0:
            t = max(0, (hi - pg.start) // pg.step + 1)
        else:
            t = max(0, (pg.start - lo) // (-pg.step) + 1)
        i = pg.domain_start + t * pg.domain_step
        b_lo, b_hi = min(b_lo, i), max(b_hi, i)
    return b_lo, b_hi


def compose(sigma: FinPermutation, tau_: FinPermutation) -> FinPermutation:
    """sigma o tau, i.e. i -> sigma(tau(i))."""
    b_lo, b_hi = _tail_bounds(tau_, sigma.window_lo, sigma.window_hi)
    ks = math.lcm(sigma.left.period, sigma.right.period)
    return from_function(lambda i: sigma(tau_(i)), b_lo, b_hi,
                         tau_.left.period * ks, tau_.right.period * ks, check=False)


def invert(sigma: FinPermutation) -> FinPermutation:
    data = sigma._inverse_data or _analyze(sigma)
    R, pre, up, down, lcm_up, lcm_down = data

    def tail(group, period):
        classes = []
        for x in range(period):
            pg = next(pg for pg in group if (x - pg.start) % abs(pg.step) == 0)
            c = pg.domain_start + ((x - pg.start) // pg.step) * pg.domain_step
            s = (period // pg.step) * pg.domain_step
            classes.append((c, s))
        return TailMap(period, tuple(classes))

    table = [pre[v] for v in range(-R, R + 1)]
    return FinPermutation(-R, table, tail(down, lcm_down), tail(up, lcm_up), check=False)


def power(sigma: FinPermutation, n: int) -> FinPermutation:
    out = identity()
    base = sigma if n >= 0 else invert(sigma)
    for _ in range(abs(n)):
        out = compose(base, out)
    return out


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class MembershipCertificate:
    group: str
    member: bool
    witness: object = None
    detail: str = ""


def _sg_bound(sigma: FinPermutation) -> int:
    """Smallest c with sigma(i)/i > 0 for |i| > c (assumes positive slopes)."""
    lo, hi = sigma.window_lo, sigma.window_hi
    scan = range(min(lo, 0), max(hi, 0) + 1)
    bad = [i for i in scan if i != 0 and sigma(i) * i <= 0]
    k = sigma.right.period
    for r, (c, s) in enumerate(sigma.right.classes):
        m = (-c) // s  # largest m with c + m*s <= 0
        i = r + m * k
        if i > max(hi, 0):
            bad.append(i)
    k = sigma.left.period
    for r, (c, s) in enumerate(sigma.left.classes):
        m = -(c // s)  # smallest m with c + m*s >= 0
        i = r + m * k
        if i < min(lo, 0):
            bad.append(i)
    return max((abs(i) for i in bad), default=0)


def membership(sigma: FinPermutation, group: GroupTag) -> MembershipCertificate:
    if group not in GROUP_TOWER:
        raise ValueError(f"unknown group {group!r}")
    if group == "SZ":
        return MembershipCertificate("SZ", True, None, "bijection of Z")
    slopes = [(side, r, s, tail.period)
              for side, tail in (("left", sigma.left), ("right", sigma.right))
              for r, (_, s) in enumerate(tail.classes)]
    if group in ("Sc", "So", "Sn"):
        c = sigma.displacement_bound()
        if c is not None:
            return MembershipCertificate(group, True, c, "bounded displacement")
        side, r, s, k = next(x for x in slopes if x[2] != x[3])
        return MembershipCertificate(
            group, False, None,
            f"{side} tail class {r} mod {k} has slope {s} != {k}: displacement grows linearly")
    wrong = [x for x in slopes if x[2] < 0]
    if wrong:
        side, r, s, k = wrong[0]
        return MembershipCertificate(
            group, False, None, f"{side} tail class {r} mod {k} maps to the opposite half-line")
    if group == "Sg":
        return MembershipCertificate("Sg", True, _sg_bound(sigma), "tails map to same-sign tails")
    if group == "Sl":
        return MembershipCertificate("Sl", True, Fraction(1, 2), "displacement at most linear")
    ratios = [Fraction(s, k) for _, _, s, k in slopes]
    return MembershipCertificate("Sm", True, (min(ratios), max(ratios)),
                                 "|sigma(i)|/|i| has positive finite limit points")


def certify(sigma: FinPermutation) -> dict[str, MembershipCertificate]:
    return {g: membership(sigma, g) for g in GROUP_TOWER}


# ---------------------------------------------------------------------------
# actions


def act_on_parity(sigma: FinPermutation, p: ParityFunction) -> ParityFunction:
    """(sigma p)(i) = p(sigma(i))."""
    b_lo, b_hi = _tail_bounds(sigma, p.window_lo, p.window_hi)
    kp = math.lcm(len(p.left_tail), len(p.right_tail))
    return ParityFunction.from_function(lambda i: p(sigma(i)), b_lo, b_hi,
                                        sigma.left.period * kp, sigma.right.period * kp)


def relabel(sigma: FinPermutation, p: ParityFunction) -> ParityFunction:
    """Transport of p along sigma: i -> p(sigma^-1(i))."""
    return act_on_parity(invert(sigma), p)


def transport_matrix(sigma: FinPermutation, a: SuperMatrix, target: ParityFunction) -> SuperMatrix:
    return SuperMatrix(target, {(sigma(i), sigma(j)): v for (i, j), v in a.entries.items()})


def phi_sigma(sigma: FinPermutation, x: ExtendedElement,
              certificate: MembershipCertificate | None = None,
              target: ParityFunction | None = None) -> ExtendedElement:
    """The isomorphism of central extensions induced by sigma in S_g.

    The matrix part moves entry (i, j) to (sigma(i), sigma(j)), graded by
    the transported parity; the central part picks up
    sum_i (-1)^p(i) x_ii (J_{sigma(i)} - J_i).
    """
    if certificate is None:
        certificate = membership(sigma, "Sg")
    if (not certificate.member
            or GROUP_TOWER.index(certificate.group) > GROUP_TOWER.index("Sg")):
        raise NotInGroupError("phi_sigma needs a permutation certified in S_g")
    p = x.mat.parity
    if target is None:
        target = relabel(sigma, p)
    mat = transport_matrix(sigma, x.mat, target)
    dz = Fraction(0)
    for (i, j), v in x.mat.entries.items():
        if i == j:
            dz += (-v if p(i) else v) * (j_sign(sigma(i)) - j_sign(i))
    return ExtendedElement(mat, x.z + dz)
