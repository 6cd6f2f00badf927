"""Counting invariants, density spectra and equivalence of parity functions."""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence, Union

from .core import P_ST, ParityFunction
from .errors import PreconditionError, UnsupportedCaseError
from .permutations import (
    FinPermutation,
    act_on_parity,
    compose,
    from_function,
    from_mapping,
    identity,
    invert,
    membership,
    tau,
)

INF = math.inf
Side = Literal["left", "right"]


class BlockParity:
    """Alternating constant blocks on i >= 0, mirrored by p(-1 - i) = p(i).

    Block ``j`` has parity ``start_parity + j mod 2`` and length ``ratio**j``
    (geometric rule) or ``(j + 1)**degree`` (polynomial rule).
    """

    def __init__(self, start_parity: int = 0, *, geometric: int | None = None,
                 polynomial: int | None = None):
        if (geometric is None) == (polynomial is None):
            raise PreconditionError("give exactly one of geometric= or polynomial=")
        if geometric is not None and geometric < 2:
            raise PreconditionError("geometric ratio must be >= 2")
        if polynomial is not None and polynomial < 0:
            raise PreconditionError("polynomial degree must be >= 0")
        self.start_parity = int(start_parity) % 2
        self.geometric = geometric
        self.polynomial = polynomial
        self._ends = [0]  # _ends[j] = first index of block j

    is_eventually_periodic = False

    def block_length(self, j: int) -> int:
        if self.geometric is not None:
            return self.geometric ** j
        return (j + 1) ** self.polynomial

    @property
    def bounded_blocks(self) -> bool:
        return self.polynomial == 0

    def _block_of(self, n: int) -> int:
        while self._ends[-1] <= n:
            self._ends.append(self._ends[-1] + self.block_length(len(self._ends) - 1))
        return bisect.bisect_right(self._ends, n) - 1

    def __call__(self, i: int) -> int:
        if i < 0:
            i = -1 - i
        return (self.start_parity + self._block_of(i)) % 2

    def _below(self, n: int, value: int) -> int:
        """Matches in [0, n) for n >= 0."""
        if n <= 0:
            return 0
        j = self._block_of(n - 1)
        total = 0
        for b in range(j):
            if (self.start_parity + b) % 2 == value:
                total += self._ends[b + 1] - self._ends[b]
        if (self.start_parity + j) % 2 == value:
            total += n - self._ends[j]
        return total

    def count(self, a: int, b: int, value: int = 1) -> int:
        if a > b:
            return 0
        total = 0
        if b >= 0:
            total += self._below(b + 1, value) - self._below(max(a, 0), value)
        if a < 0:
            hi = min(b, -1)
            total += self._below(-a, value) - self._below(-1 - hi, value)
        return total

    def __repr__(self) -> str:
        rule = (f"geometric={self.geometric}" if self.geometric is not None
                else f"polynomial={self.polynomial}")
        return f"BlockParity(start_parity={self.start_parity}, {rule})"


ParityLike = Union[ParityFunction, BlockParity]


def odd_count(p: ParityLike, a: int, b: int) -> int:
    if a > b:
        raise PreconditionError(f"empty range [{a}, {b}]")
    return p.count(a, b, 1)


def even_count(p: ParityLike, a: int, b: int) -> int:
    if a > b:
        raise PreconditionError(f"empty range [{a}, {b}]")
    return p.count(a, b, 0)


def density(p: ParityLike, a: int, b: int) -> Fraction:
    """Odd(p; a, b) / (b - a), counting inclusively; symmetric in a, b."""
    if a == b:
        raise PreconditionError("density needs a != b")
    if a > b:
        a, b = b, a
    return Fraction(p.count(a, b, 1), b - a)


# ---------------------------------------------------------------------------
# counting invariants


@dataclass(frozen=True)
class CountInvariants:
    odd_neg: float | int
    even_neg: float | int
    odd_pos: float | int
    even_pos: float | int

    def as_dict(self) -> dict[str, float | int]:
        return {"odd_neg": self.odd_neg, "even_neg": self.even_neg,
                "odd_pos": self.odd_pos, "even_pos": self.even_pos}


@dataclass(frozen=True)
class Classification:
    counts: CountInvariants
    finite: bool
    label: str
    odd_total: float | int
    even_total: float | int


def count_invariants(p: ParityLike) -> CountInvariants:
    """Odd/Even on (-inf, 0] and [0, +inf)."""
    if isinstance(p, BlockParity):
        return CountInvariants(INF, INF, INF, INF)
    lo = min(p.window_lo, 0)
    hi = max(p.window_hi, 0)

    def half(word, a, b, value):
        return INF if value in word else p.count(a, b, value)

    return CountInvariants(
        odd_neg=half(p.left_tail, lo, 0, 1),
        even_neg=half(p.left_tail, lo, 0, 0),
        odd_pos=half(p.right_tail, 0, hi, 1),
        even_pos=half(p.right_tail, 0, hi, 0),
    )


def _fmt(n) -> str:
    return "∞" if n == INF else str(n)


def classify(p: ParityLike) -> Classification:
    c = count_invariants(p)
    p0 = p(0)
    odd_total = c.odd_neg + c.odd_pos - p0
    even_total = c.even_neg + c.even_pos - (1 - p0)
    if odd_total != INF or even_total != INF:
        label = f"({_fmt(even_total)}|{_fmt(odd_total)})"
        return Classification(c, True, label, odd_total, even_total)
    finite = [name for name, v in c.as_dict().items() if v != INF]
    label = "Inf" if not finite else "finite:" + "+".join(finite)
    return Classification(c, False, label, odd_total, even_total)


# ---------------------------------------------------------------------------
# density spectra


class ScheduleError(PreconditionError):
    """A window family does not push both endpoints and the gap to infinity."""


@dataclass(frozen=True)
class Schedule:
    """Windows (near, far) on the positive axis; mirrored for the left side."""

    windows: tuple[tuple[int, int], ...]
    label: str = "custom"

    def validate(self) -> None:
        w = self.windows
        if len(w) < 2:
            raise ScheduleError("a schedule needs at least two windows")
        if any(not 0 < a < b for a, b in w):
            raise ScheduleError("windows must satisfy 0 < near < far")
        nears = [a for a, _ in w]
        gaps = [b - a for a, b in w]
        if any(x > y for x, y in zip(nears, nears[1:])) or any(x > y for x, y in zip(gaps, gaps[1:])):
            raise ScheduleError("near endpoints and gaps must be nondecreasing")
        if nears[-1] <= nears[0] or gaps[-1] <= gaps[0]:
            raise ScheduleError("near endpoints and gaps must grow along the schedule")

    def oriented(self, side: Side) -> list[tuple[int, int]]:
        if side == "right":
            return list(self.windows)
        return [(-b, -a) for a, b in self.windows]


def default_schedule(min_exp: int = 4, max_exp: int = 17, steps: int = 64) -> Schedule:
    """Windows [isqrt(n), n] with n on a geometric grid from 2**min_exp to 2**max_exp."""
    fars = sorted({round(2 ** (e + t / steps)) for e in range(min_exp, max_exp)
                   for t in range(steps)} | {2 ** max_exp})
    return Schedule(tuple((math.isqrt(n), n) for n in fars),
                    f"sqrt-anchored, far endpoint 2^{min_exp}..2^{max_exp}")


@dataclass(frozen=True)
class SpectrumEstimate:
    side: str
    lower: Fraction
    upper: Fraction
    exact: bool
    samples: str
    drift: Fraction = Fraction(0)
    rows: tuple[tuple[int, int, Fraction], ...] = field(default=(), compare=False, repr=False)


def tail_density(p: ParityFunction, side: Side) -> Fraction:
    word = p.right_tail if side == "right" else p.left_tail
    return Fraction(sum(word), len(word))


def spectrum(p: ParityLike, side: Side, schedule: Schedule | None = None,
             tail_octaves: int = 4, keep_rows: bool = False) -> SpectrumEstimate:
    """Left or right density spectrum.

    Exact for eventually periodic functions; otherwise the range of window
    densities over the last ``tail_octaves`` octaves of the schedule, with
    ``drift`` measuring the change against the preceding octaves.
    """
    if side not in ("left", "right"):
        raise PreconditionError(f"side must be 'left' or 'right', not {side!r}")
    schedule = schedule or default_schedule()
    schedule.validate()
    rows = []
    if keep_rows or not p.is_eventually_periodic:
        rows = [(a, b, density(p, a, b)) for a, b in schedule.oriented(side)]
    if p.is_eventually_periodic:
        d = tail_density(p, side)
        return SpectrumEstimate(side, d, d, True, "exact from periodic tail", Fraction(0), tuple(rows))
    octave = [max(abs(a), abs(b)).bit_length() for a, b, _ in rows]
    last = max(octave)
    recent = [d for o, (_, _, d) in zip(octave, rows) if o > last - tail_octaves]
    earlier = [d for o, (_, _, d) in zip(octave, rows)
               if last - 2 * tail_octaves < o <= last - tail_octaves]
    lower, upper = min(recent), max(recent)
    drift = Fraction(0)
    if earlier:
        drift = max(abs(lower - min(earlier)), abs(upper - max(earlier)))
    return SpectrumEstimate(side, lower, upper, False, schedule.label, drift, tuple(rows))


# ---------------------------------------------------------------------------
# tightness


def max_run(p: ParityLike) -> float | int:
    """Longest constant run of p (``inf`` if unbounded)."""
    if isinstance(p, BlockParity):
        if not p.bounded_blocks:
            return INF
        lo, hi = -8, 8
    else:
        if len(set(p.left_tail)) == 1 or len(set(p.right_tail)) == 1:
            return INF
        lo = p.window_lo - 2 * len(p.left_tail) - 2
        hi = p.window_hi + 2 * len(p.right_tail) + 2
    best = run = 0
    prev = None
    for i in range(lo, hi + 1):
        v = p(i)
        run = run + 1 if v == prev else 1
        prev = v
        best = max(best, run)
    return best


def is_tight(p: ParityLike, c: int) -> bool:
    return max_run(p) <= c


# ---------------------------------------------------------------------------
# normalizing permutation


def _require_periodic(p) -> ParityFunction:
    if not isinstance(p, ParityFunction):
        raise UnsupportedCaseError("this operation needs an eventually periodic parity function")
    return p


def sigma_p(p: ParityFunction) -> FinPermutation:
    """Normalizing permutation of p in Inf: p(x) = p_st(sigma_p(x)).

    Even points of p go in order onto the even integers, odd points onto the
    odd integers, each half-line onto the same half-line (up to the point 0).
    """
    p = _require_periodic(p)
    if classify(p).label != "Inf":
        raise PreconditionError("sigma_p is defined only for parity functions in Inf")

    def f(x: int) -> int:
        if x >= 0:
            if p(x) == 0:
                return 2 * p.count(1, x, 0)
            return 2 * p.count(0, x, 1) - 1
        if p(x) == 0:
            return -2 * (p.count(x, 0, 0) - 1)
        return -(2 * p.count(x, -1, 1) - 1)

    kl, kr = len(p.left_tail), len(p.right_tail)
    lo = min(p.window_lo, 0) - kl
    hi = max(p.window_hi, 0) + kr
    return from_function(f, lo, hi, kl, kr)


# ---------------------------------------------------------------------------
# order-preserving matching between parity functions of the same class


class _Letters:
    """Positions of one letter of p, ranked in order."""

    def __init__(self, p: ParityFunction, letter: int):
        self.p = p
        self.letter = letter
        self.left_inf = letter in p.left_tail
        self.right_inf = letter in p.right_tail
        self.lo = min(p.window_lo, 0)
        self.hi = max(p.window_hi, 0)

    def rank(self, x: int) -> int:
        p, b = self.p, self.letter
        if self.left_inf and self.right_inf:
            return p.count(0, x - 1, b) if x >= 0 else -p.count(x, -1, b)
        if self.right_inf:
            return p.count(self.lo, x - 1, b)
        return -p.count(x, self.hi, b)

    def select(self, n: int) -> int:
        p, b = self.p, self.letter
        if self.left_inf and self.right_inf:
            x, step, need = (0, 1, n) if n >= 0 else (-1, -1, -n - 1)
        elif self.right_inf:
            x, step, need = self.lo, 1, n
        else:
            x, step, need = self.hi, -1, -n - 1
        seen = 0
        while True:
            if p(x) == b:
                if seen == need:
                    return x
                seen += 1
            x += step


def _matching_periods(src_word, dst_word) -> int:
    k_dst = len(dst_word)
    t = 1
    for b in (0, 1):
        ns, nd = src_word.count(b), dst_word.count(b)
        if ns:
            t = math.lcm(t, ns // math.gcd(ns, nd))
    return k_dst * t


def matching_witness(src: ParityFunction, dst: ParityFunction) -> FinPermutation:
    """rho with src(rho(i)) = dst(i): letters matched in order, side by side."""
    letters_src = {b: _Letters(src, b) for b in (0, 1)}
    letters_dst = {b: _Letters(dst, b) for b in (0, 1)}
    for b in (0, 1):
        s, d = letters_src[b], letters_dst[b]
        if (s.left_inf, s.right_inf) != (d.left_inf, d.right_inf):
            raise PreconditionError("parity functions lie in different classes")
        if not (s.left_inf or s.right_inf):
            raise PreconditionError("order matching needs non-finite parity functions")

    def rho(i: int) -> int:
        b = dst(i)
        return letters_src[b].select(letters_dst[b].rank(i))

    kr = _matching_periods(src.right_tail, dst.right_tail)
    kl = _matching_periods(src.left_tail, dst.left_tail)
    hi = max(dst.window_hi, 0) + 1
    while any(rho(i) <= max(src.window_hi, 0) for i in range(hi, hi + 2 * kr)):
        hi += kr
    lo = min(dst.window_lo, 0) - 1
    while any(rho(i) >= min(src.window_lo, 0) for i in range(lo - 2 * kl, lo + 1)):
        lo -= kl
    return from_function(rho, lo, hi, kl, kr)


def finite_witness(p1: ParityFunction, p2: ParityFunction) -> FinPermutation:
    """Identity off the disagreement set, pairing its two halves in order."""
    lo = min(p1.window_lo, p2.window_lo)
    hi = max(p1.window_hi, p2.window_hi)
    to_odd = [x for x in range(lo, hi + 1) if p1(x) == 0 and p2(x) == 1]
    to_even = [x for x in range(lo, hi + 1) if p1(x) == 1 and p2(x) == 0]
    if len(to_odd) != len(to_even):
        raise PreconditionError("total counts differ")
    mapping = {}
    for x, y in zip(to_odd, to_even):
        mapping[x] = y
        mapping[y] = x
    return from_mapping(mapping)


# ---------------------------------------------------------------------------
# equivalence deciders


@dataclass(frozen=True)
class EquivalenceWitness:
    equivalent: bool
    group: str
    sigma: FinPermutation | None = None
    via_tau: bool = False
    reason: str = ""

    def replay_permutation(self) -> FinPermutation | None:
        if self.sigma is None:
            return None
        return compose(tau(), self.sigma) if self.via_tau else self.sigma


SUPPORTED_GROUPS = ("Sc", "So", "Sn", "Sm", "Sl", "Sg")
_BOUNDED = ("Sc", "So", "Sn")


def _spectra(p: ParityFunction) -> tuple[Fraction, Fraction]:
    return tail_density(p, "left"), tail_density(p, "right")


def equivalent(p1: ParityLike, p2: ParityLike, group: str) -> EquivalenceWitness:
    """Decide whether some sigma in ``group`` (or tau o sigma) carries p1 to p2.

    On success ``act_on_parity(witness.replay_permutation(), p1) == p2``.
    """
    if group not in SUPPORTED_GROUPS:
        raise UnsupportedCaseError(f"no decider for group {group!r}")
    p1, p2 = _require_periodic(p1), _require_periodic(p2)
    c1, c2 = classify(p1), classify(p2)
    if c1.finite or c2.finite:
        if not (c1.finite and c2.finite):
            return EquivalenceWitness(False, group, reason="only one of the functions is finite")
        if (c1.odd_total, c1.even_total) != (c2.odd_total, c2.even_total):
            return EquivalenceWitness(False, group, reason=f"total counts differ: {c1.label} vs {c2.label}")
        sigma = finite_witness(p1, p2)
        return EquivalenceWitness(True, group, sigma, False, f"finite, counts {c1.label}")

    failures = []
    for via_tau, src in ((False, p1), (True, act_on_parity(tau(), p1))):
        cs = classify(src)
        tag = "tau-twisted" if via_tau else "untwisted"
        if cs.label != c2.label:
            failures.append(f"{tag}: classes {cs.label} vs {c2.label}")
            continue
        if group in _BOUNDED and _spectra(src) != _spectra(p2):
            l1, r1 = _spectra(src)
            l2, r2 = _spectra(p2)
            failures.append(f"{tag}: spectra ({l1},{r1}) vs ({l2},{r2})")
            continue
        if cs.label == "Inf":
            sigma = compose(invert(sigma_p(src)), sigma_p(p2))
        else:
            sigma = matching_witness(src, p2)
        cert = membership(sigma, group)
        if not cert.member:  # pragma: no cover - would contradict the invariants
            raise AssertionError(f"witness failed {group} certification: {cert.detail}")
        return EquivalenceWitness(True, group, sigma, via_tau, f"{tag}: same class {cs.label}")
    return EquivalenceWitness(False, group, reason="; ".join(failures))


def replays(w: EquivalenceWitness, p1: ParityFunction, p2: ParityFunction, n: int = 100) -> bool:
    """Pointwise check on [-n, n] plus equality of canonical presentations."""
    rho = w.replay_permutation()
    if rho is None:
        return False
    image = act_on_parity(rho, p1)
    return image == p2 and all(p1(rho(i)) == p2(i) for i in range(-n, n + 1))


def normalizes(p: ParityFunction, n: int = 100) -> bool:
    """True when transporting p along sigma_p yields p_st on [-n, n]."""
    s = sigma_p(p)
    inv = invert(s)
    return all(p(inv(i)) == P_ST(i) for i in range(-n, n + 1))


__all__ = [
    "BlockParity", "Classification", "CountInvariants", "EquivalenceWitness", "Schedule",
    "ScheduleError", "SpectrumEstimate", "classify", "count_invariants", "default_schedule",
    "density", "equivalent", "even_count", "finite_witness", "identity", "is_tight",
    "matching_witness", "max_run", "normalizes", "odd_count", "replays", "sigma_p",
    "spectrum", "tail_density",
]
