"""Exact scalars, parity functions and finitely supported supermatrices.

Scalars are :class:`fractions.Fraction`; a parity is the integer 0 (even) or
1 (odd).  A :class:`ParityFunction` is a total map Z -> Z/2 given by a finite
window and two eventually periodic tails, and every instance is kept in a
canonical presentation so that ``==`` decides pointwise equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Iterable, Iterator, Literal, Mapping, Union

from .errors import ParityMismatchError, PreconditionError, UnsupportedProfileError

Scalar = Fraction
Parity = int
Cell = tuple[int, int]

EVEN: Parity = 0
ODD: Parity = 1


def as_scalar(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars; pass a Fraction or 'num/den'")
    return Fraction(value)


def _min_period(word: tuple[int, ...]) -> tuple[int, ...]:
    k = len(word)
    for d in range(1, k + 1):
        if k % d == 0 and all(word[i] == word[i % d] for i in range(k)):
            return word[:d]
    return word


def _check_bits(bits: Iterable[int], what: str) -> tuple[int, ...]:
    out = tuple(int(b) for b in bits)
    if any(b not in (0, 1) for b in out):
        raise PreconditionError(f"{what} must consist of 0/1 values")
    return out


@dataclass(frozen=True)
class ParityFunction:
    """Window values on ``[window_lo, window_hi]`` plus periodic tails.

    Tail words are anchored absolutely: below the window the value at ``i``
    is ``left_tail[i % len(left_tail)]``, above it ``right_tail[i % len(...)]``.
    A constant tail is a word of length one.
    """

    window_lo: int
    window: tuple[int, ...]
    left_tail: tuple[int, ...]
    right_tail: tuple[int, ...]

    def __post_init__(self):
        window = _check_bits(self.window, "window")
        left = _min_period(_check_bits(self.left_tail, "left tail"))
        right = _min_period(_check_bits(self.right_tail, "right tail"))
        if not left or not right:
            raise PreconditionError("tail words must be nonempty")
        lo = int(self.window_lo)
        hi = lo + len(window) - 1

        def lval(i):
            return left[i % len(left)]

        def rval(i):
            return right[i % len(right)]

        first_left_diff = next((i for i in range(lo, hi + 1) if window[i - lo] != lval(i)), None)
        last_right_diff = next((i for i in range(hi, lo - 1, -1) if window[i - lo] != rval(i)), None)
        if (first_left_diff is not None and last_right_diff is not None
                and first_left_diff <= last_right_diff):
            new_lo = first_left_diff
            window = window[new_lo - lo:last_right_diff - lo + 1]
        else:
            # empty window: the switch point is pushed as far left as possible
            if left == right:
                new_lo = 0
            else:
                s = lo if last_right_diff is None else last_right_diff + 1
                while lval(s - 1) == rval(s - 1):
                    s -= 1
                new_lo = s
            window = ()
        object.__setattr__(self, "window_lo", new_lo)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "left_tail", left)
        object.__setattr__(self, "right_tail", right)

    @property
    def window_hi(self) -> int:
        return self.window_lo + len(self.window) - 1

    def __call__(self, i: int) -> Parity:
        lo = self.window_lo
        if i < lo:
            return self.left_tail[i % len(self.left_tail)]
        if i > lo + len(self.window) - 1:
            return self.right_tail[i % len(self.right_tail)]
        return self.window[i - lo]

    def values(self, lo: int, hi: int) -> list[Parity]:
        return [self(i) for i in range(lo, hi + 1)]

    def complement(self) -> ParityFunction:
        return ParityFunction(self.window_lo, tuple(1 - b for b in self.window),
                              tuple(1 - b for b in self.left_tail),
                              tuple(1 - b for b in self.right_tail))

    @property
    def is_eventually_periodic(self) -> bool:
        return True

    def count(self, a: int, b: int, value: Parity = ODD) -> int:
        """Number of ``i`` in ``[a, b]`` with ``p(i) == value`` (inclusive)."""
        if a > b:
            return 0
        lo, hi = self.window_lo, self.window_hi
        total = 0
        if a < lo:
            total += _tail_count(self.left_tail, a, min(b, lo - 1), value)
        if b > hi:
            total += _tail_count(self.right_tail, max(a, hi + 1), b, value)
        wa, wb = max(a, lo), min(b, hi)
        if wa <= wb:
            total += sum(1 for x in self.window[wa - lo:wb - lo + 1] if x == value)
        return total

    # constructors -------------------------------------------------------

    @classmethod
    def constant(cls, value: Parity) -> ParityFunction:
        return cls(0, (), (value,), (value,))

    @classmethod
    def periodic(cls, word: Iterable[int] | str) -> ParityFunction:
        w = tuple(int(c) for c in word)
        return cls(0, (), w, w)

    @classmethod
    def from_function(cls, f: Callable[[int], int], lo: int, hi: int,
                      left_period: int, right_period: int) -> ParityFunction:
        """Sample ``f`` on a window and one period of each tail.

        The caller guarantees that ``f`` is ``left_period``-periodic below
        ``lo`` and ``right_period``-periodic above ``hi``.
        """
        window = tuple(f(i) for i in range(lo, hi + 1))
        right = [0] * right_period
        for i in range(hi + 1, hi + 1 + right_period):
            right[i % right_period] = f(i)
        left = [0] * left_period
        for i in range(lo - left_period, lo):
            left[i % left_period] = f(i)
        return cls(lo, window, tuple(left), tuple(right))

    def __repr__(self) -> str:
        w = "".join(map(str, self.window))
        return (f"ParityFunction(lo={self.window_lo}, window='{w}', "
                f"left='{''.join(map(str, self.left_tail))}', "
                f"right='{''.join(map(str, self.right_tail))}')")


def _tail_count(word: tuple[int, ...], a: int, b: int, value: int) -> int:
    k = len(word)
    prefix = [0]
    for x in word:
        prefix.append(prefix[-1] + (x == value))

    def below(n):  # matches in [0, n) extended to all integers by periodicity
        return (n // k) * prefix[k] + prefix[n % k]

    return below(b + 1) - below(a)


P_ST = ParityFunction.periodic((0, 1))
P_PLUS = ParityFunction(0, (), (0,), (1,))
P_EVEN = ParityFunction.constant(EVEN)
P_ODD = ParityFunction.constant(ODD)

BUILTIN_PARITIES: dict[str, ParityFunction] = {
    "p_st": P_ST,
    "p_plus": P_PLUS,
    "even": P_EVEN,
    "odd": P_ODD,
}


def evaluate_parity(p: ParityFunction, i: int) -> Parity:
    return p(i)


# ---------------------------------------------------------------------------
# supermatrices


class SuperMatrix:
    """A finitely supported matrix over Z x Z graded by a parity function.

    Exact zeros are never stored, so ``support`` is literally the set of
    nonzero positions.  Instances are treated as immutable.
    """

    __slots__ = ("parity", "_entries")

    def __init__(self, parity: ParityFunction, entries: Mapping[Cell, object] | Iterable = ()):
        self.parity = parity
        items = entries.items() if isinstance(entries, Mapping) else entries
        store: dict[Cell, Fraction] = {}
        for key, value in items:
            i, j = key
            v = as_scalar(value)
            if v:
                cell = (int(i), int(j))
                s = store.get(cell, 0) + v
                if s:
                    store[cell] = s
                else:
                    store.pop(cell, None)
        self._entries = store

    @classmethod
    def _raw(cls, parity: ParityFunction, store: dict[Cell, Fraction]) -> SuperMatrix:
        m = cls.__new__(cls)
        m.parity = parity
        m._entries = {k: v for k, v in store.items() if v}
        return m

    @classmethod
    def zero(cls, parity: ParityFunction) -> SuperMatrix:
        return cls._raw(parity, {})

    @classmethod
    def elementary(cls, parity: ParityFunction, i: int, j: int, value=1) -> SuperMatrix:
        return cls(parity, {(i, j): value})

    @property
    def entries(self) -> Mapping[Cell, Fraction]:
        return MappingProxyType(self._entries)

    @property
    def support(self) -> frozenset[Cell]:
        return frozenset(self._entries)

    def __getitem__(self, cell: Cell) -> Fraction:
        return self._entries.get(cell, Fraction(0))

    def __iter__(self) -> Iterator[tuple[Cell, Fraction]]:
        return iter(sorted(self._entries.items()))

    def __len__(self) -> int:
        return len(self._entries)

    def __bool__(self) -> bool:
        return bool(self._entries)

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._entries
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.parity == other.parity and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.parity, frozenset(self._entries.items())))

    def _check(self, other: SuperMatrix) -> None:
        if self.parity != other.parity:
            raise ParityMismatchError("supermatrices use different parity functions")

    def __add__(self, other: SuperMatrix) -> SuperMatrix:
        self._check(other)
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) + v
        return SuperMatrix._raw(self.parity, out)

    def __neg__(self) -> SuperMatrix:
        return SuperMatrix._raw(self.parity, {k: -v for k, v in self._entries.items()})

    def __sub__(self, other: SuperMatrix) -> SuperMatrix:
        return self + (-other)

    def __mul__(self, c) -> SuperMatrix:
        c = as_scalar(c)
        return SuperMatrix._raw(self.parity, {k: c * v for k, v in self._entries.items()})

    __rmul__ = __mul__

    def cell_parity(self, i: int, j: int) -> Parity:
        return (self.parity(i) + self.parity(j)) % 2

    def degree(self) -> Parity | None:
        """Common parity of all entries, ``None`` if inhomogeneous.  Zero is even."""
        degs = {self.cell_parity(i, j) for i, j in self._entries}
        if len(degs) > 1:
            return None
        return degs.pop() if degs else EVEN

    @property
    def is_homogeneous(self) -> bool:
        return self.degree() is not None

    def band(self) -> int:
        """Smallest ``c`` with ``a_ij = 0`` whenever ``|i - j| > c``."""
        return max((abs(i - j) for i, j in self._entries), default=0)

    def indices(self) -> set[int]:
        return {x for cell in self._entries for x in cell}

    def with_parity(self, parity: ParityFunction) -> SuperMatrix:
        return SuperMatrix._raw(parity, dict(self._entries))

    def __repr__(self) -> str:
        body = ", ".join(f"({i},{j}): {v}" for (i, j), v in sorted(self._entries.items()))
        return f"SuperMatrix({{{body}}})"


def _rows(store: Mapping[Cell, Fraction]) -> dict[int, list[tuple[int, Fraction]]]:
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, j), v in store.items():
        rows.setdefault(i, []).append((j, v))
    return rows


def bracket(a: SuperMatrix, b: SuperMatrix) -> SuperMatrix:
    """[a,b]_ij = sum_k a_ik b_kj - (-1)^((p(i)+p(k))(p(j)+p(k))) b_ik a_kj."""
    a._check(b)
    p = a.parity
    cache: dict[int, int] = {}

    def par(i):
        v = cache.get(i)
        if v is None:
            v = cache[i] = p(i)
        return v

    out: dict[Cell, Fraction] = {}
    b_rows = _rows(b._entries)
    a_rows = _rows(a._entries)
    for (i, k), x in a._entries.items():
        for j, y in b_rows.get(k, ()):
            out[(i, j)] = out.get((i, j), 0) + x * y
    for (i, k), y in b._entries.items():
        for j, x in a_rows.get(k, ()):
            if (par(i) + par(k)) * (par(j) + par(k)) % 2:
                out[(i, j)] = out.get((i, j), 0) + y * x
            else:
                out[(i, j)] = out.get((i, j), 0) - y * x
    return SuperMatrix._raw(p, out)


def supertrace(a: SuperMatrix) -> Fraction:
    p = a.parity
    return sum((-v if p(i) else v for (i, j), v in a._entries.items() if i == j), Fraction(0))


def homogeneous_part(a: SuperMatrix, s: Parity) -> SuperMatrix:
    return SuperMatrix._raw(a.parity, {(i, j): v for (i, j), v in a._entries.items()
                                       if a.cell_parity(i, j) == s % 2})


# ---------------------------------------------------------------------------
# growth classes

GrowthClass = Literal["g", "l", "o", "c"]
GROWTH_CLASSES: tuple[GrowthClass, ...] = ("g", "l", "o", "c")


@dataclass(frozen=True)
class FiniteSupport:
    cells: frozenset[Cell]


@dataclass(frozen=True)
class Band:
    radius: int

    def __post_init__(self):
        if self.radius < 0:
            raise UnsupportedProfileError("band radius must be nonnegative")


@dataclass(frozen=True)
class ParametricBand:
    """Support ``|i - j| <= coefficient * |i|**exponent + offset``."""

    coefficient: Fraction
    exponent: Fraction
    offset: int = 0


SupportProfile = Union[FiniteSupport, Band, ParametricBand]


@dataclass(frozen=True)
class ClassDecision:
    growth_class: str
    member: bool
    witness: Fraction | None = None
    reason: str = field(default="", compare=False)


def support_profile(a: SuperMatrix) -> FiniteSupport:
    return FiniteSupport(a.support)


def class_membership(profile: SupportProfile, cls: GrowthClass) -> ClassDecision:
    """Decide membership of a support descriptor in gl_{p,g/l/o/c}.

    Witnesses: the band constant for ``c``; an admissible exponent lambda for
    ``l``; for a parametric band outside ``o`` the exponent at which the limit
    expression stays bounded away from zero.
    """
    if cls not in GROWTH_CLASSES:
        raise PreconditionError(f"unknown growth class {cls!r}")
    if isinstance(profile, FiniteSupport):
        c = max((abs(i - j) for i, j in profile.cells), default=0)
        return _bounded_decision(cls, c, "finite support")
    if isinstance(profile, Band):
        return _bounded_decision(cls, profile.radius, f"band of radius {profile.radius}")
    if isinstance(profile, ParametricBand):
        coef = as_scalar(profile.coefficient)
        eps = as_scalar(profile.exponent)
        if coef < 0 or eps < 0 or profile.offset < 0:
            raise UnsupportedProfileError("parametric band descriptors must be monotone")
        if coef == 0 or eps == 0:
            radius = (profile.offset + coef) // 1 if eps == 0 else profile.offset
            return _bounded_decision(cls, radius, "parametric band with bounded radius")
        if eps >= 1:
            raise UnsupportedProfileError(
                "radius growth |i|^e with e >= 1 is outside the decidable grammar")
        reason = f"radius ~ |i|^{eps}"
        if cls == "g":
            return ClassDecision("g", True, None, reason + ": sublinear band meets each quadrant finitely")
        if cls == "l":
            return ClassDecision("l", True, 1 / (2 * eps),
                                 reason + ": |i-j|^lam/|i+j| -> 0 for every lam < 1/e")
        return ClassDecision(cls, False, 1 / eps,
                             reason + ": at lam = 1/e the ratio tends to a positive constant")
    raise UnsupportedProfileError(f"unsupported support profile {profile!r}")


def _bounded_decision(cls: GrowthClass, c: int, reason: str) -> ClassDecision:
    if cls == "c":
        return ClassDecision("c", True, Fraction(c), reason)
    if cls == "l":
        return ClassDecision("l", True, Fraction(1), reason)
    return ClassDecision(cls, True, None, reason)
