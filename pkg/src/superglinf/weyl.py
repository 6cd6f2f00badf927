"""Bases of gl(m|n), odd reflections, linear and string-based super Weyl groups.

Weights are integer vectors in the basis (eps_1..eps_m, delta_1..delta_n) with
the form (eps_i, eps_j) = [i == j], (delta_i, delta_j) = -[i == j].
Nodes are numbered from 1.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import PreconditionError

Vector = tuple[int, ...]
MAX_LETTERS = 12
WHITE, GREY = "○", "⊗"


# ---------------------------------------------------------------------------
# parity words and the base graph


@dataclass(frozen=True)
class ParityWord:
    letters: str

    def __post_init__(self):
        if not self.letters or set(self.letters) - {"E", "D"}:
            raise PreconditionError(f"parity word must be a nonempty string over E, D: {self.letters!r}")

    @classmethod
    def distinguished(cls, m: int, n: int) -> ParityWord:
        return cls("E" * m + "D" * n)

    @property
    def m(self) -> int:
        return self.letters.count("E")

    @property
    def n(self) -> int:
        return self.letters.count("D")

    @property
    def nodes(self) -> int:
        return len(self.letters) - 1

    def is_grey(self, i: int) -> bool:
        self._check_node(i)
        return self.letters[i - 1] != self.letters[i]

    def node_colors(self) -> list[str]:
        return [GREY if self.is_grey(i) else WHITE for i in range(1, self.nodes + 1)]

    def diagram(self) -> str:
        return "--".join(self.node_colors())

    def simple_roots(self) -> list[Vector]:
        """v_i - v_{i+1}, letters mapped to eps/delta slots in order of appearance."""
        m = self.m
        slots, e, d = [], 0, 0
        for ch in self.letters:
            if ch == "E":
                slots.append(e)
                e += 1
            else:
                slots.append(m + d)
                d += 1
        size = len(self.letters)
        return [_sub(_unit(size, slots[i]), _unit(size, slots[i + 1])) for i in range(self.nodes)]

    def _check_node(self, i: int) -> None:
        if not 1 <= i <= self.nodes:
            raise PreconditionError(f"node {i} out of range 1..{self.nodes}")

    def __str__(self) -> str:
        return self.letters


def odd_reflection(w: ParityWord, i: int) -> ParityWord:
    if not w.is_grey(i):
        raise PreconditionError(f"node {i} of {w} is white; odd reflections need a grey node")
    s = list(w.letters)
    s[i - 1], s[i] = s[i], s[i - 1]
    return ParityWord("".join(s))


@dataclass(frozen=True)
class BaseGraph:
    m: int
    n: int
    nodes: tuple[ParityWord, ...]
    edges: tuple[tuple[int, int, int], ...]  # (source index, target index, node)

    def is_connected(self) -> bool:
        if not self.nodes:
            return False
        adj = {k: set() for k in range(len(self.nodes))}
        for a, b, _ in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        seen, todo = {0}, [0]
        while todo:
            for b in adj[todo.pop()] - seen:
                seen.add(b)
                todo.append(b)
        return len(seen) == len(self.nodes)

    def to_dot(self) -> str:
        lines = [f'graph "gl({self.m}|{self.n}) bases" {{']
        for k, w in enumerate(self.nodes):
            lines.append(f'  n{k} [label="{w}\\n{w.diagram()}"];')
        for a, b, i in self.edges:
            lines.append(f'  n{a} -- n{b} [label="{GREY}{i}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def enumerate_bases(m: int, n: int) -> BaseGraph:
    """Breadth-first closure under odd reflections from E^m D^n."""
    if m < 1 or n < 1:
        raise PreconditionError("m and n must be positive")
    if m + n > MAX_LETTERS:
        raise PreconditionError(f"m + n = {m + n} exceeds the bound {MAX_LETTERS}")
    start = ParityWord.distinguished(m, n)
    index = {start: 0}
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(1, w.nodes + 1):
            if not w.is_grey(i):
                continue
            v = odd_reflection(w, i)
            if v not in index:
                index[v] = len(order)
                order.append(v)
                queue.append(v)
            a, b = index[w], index[v]
            if a < b:
                edges.append((a, b, i))
    return BaseGraph(m, n, tuple(order), tuple(edges))


# ---------------------------------------------------------------------------
# Cartan matrices and the linear reflection


def _unit(size: int, k: int) -> Vector:
    return tuple(1 if t == k else 0 for t in range(size))


def _sub(a: Sequence[int], b: Sequence[int]) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def _add(a: Sequence[int], b: Sequence[int], c: int = 1) -> Vector:
    return tuple(x + c * y for x, y in zip(a, b))


def form(m: int, u: Sequence, v: Sequence):
    return sum(u[k] * v[k] for k in range(m)) - sum(u[k] * v[k] for k in range(m, len(u)))


@dataclass(frozen=True)
class CartanMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    node_parities: tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i - 1][j - 1]


def cartan_from_roots(m: int, roots: Sequence[Vector]) -> CartanMatrix:
    """Gram matrix of the form; rows of non-isotropic roots scaled to A_ii = 2."""
    rows, colors = [], []
    for a in roots:
        aa = form(m, a, a)
        scale = Fraction(2, aa) if aa else Fraction(1)
        rows.append(tuple(scale * form(m, a, b) for b in roots))
        colors.append(WHITE if aa else GREY)
    return CartanMatrix(tuple(rows), tuple(colors))


def cartan_matrix(w: ParityWord) -> CartanMatrix:
    return cartan_from_roots(w.m, w.simple_roots())


def linear_reflection(A: CartanMatrix, i: int, j: int) -> tuple[Fraction, ...]:
    """r_{alpha_i}(alpha_j) as coefficients on alpha_1..alpha_N."""
    N = A.size
    if not (1 <= i <= N and 1 <= j <= N):
        raise PreconditionError(f"nodes must lie in 1..{N}")
    coeff = [Fraction(0)] * N
    coeff[j - 1] = Fraction(1)
    aii = A[i, i]
    if i == j:
        coeff[j - 1] = Fraction(-1)
    elif aii == 2:
        coeff[i - 1] -= A[i, j]
    elif aii == 1:
        coeff[i - 1] -= 2 * A[i, j]
    elif aii == 0 and A[j, i] != 0:
        coeff[i - 1] += 1
    elif aii == 0:
        pass
    else:
        raise PreconditionError(f"diagonal entry A_ii = {aii} is outside the supported cases")
    return tuple(coeff)


def reflect_base(m: int, roots: Sequence[Vector], i: int) -> tuple[Vector, ...]:
    A = cartan_from_roots(m, roots)
    out = []
    for j in range(1, len(roots) + 1):
        coeff = linear_reflection(A, i, j)
        v = tuple(0 for _ in roots[0])
        for c, r in zip(coeff, roots):
            if c:
                if c.denominator != 1:
                    raise PreconditionError("non-integral reflection coefficient")
                v = _add(v, r, int(c))
        out.append(v)
    return tuple(out)


@dataclass(frozen=True)
class LinearOrbit:
    states: tuple[tuple[Vector, ...], ...]
    parents: tuple[tuple[int, int] | None, ...]  # (parent index, node reflected)
    complete: bool

    def contains(self, roots: Iterable[Vector]) -> bool:
        target = frozenset(roots)
        return any(frozenset(s) == target for s in self.states)

    def path_to(self, k: int) -> list[int]:
        """Nodes reflected, in order, to reach state k from the start."""
        path = []
        while self.parents[k] is not None:
            k, node = self.parents[k]
            path.append(node)
        return path[::-1]


def linear_weyl_orbit(m: int, n: int, depth: int | None = None,
                      max_states: int = 50000) -> LinearOrbit:
    """Orbit of the distinguished simple-root set under linear reflections."""
    if m + n > MAX_LETTERS or m + n < 2:
        raise PreconditionError("need 2 <= m + n <= 12")
    start = tuple(ParityWord.distinguished(m, n).simple_roots())
    seen = {frozenset(start): 0}
    states, parents = [start], [None]
    queue = deque([(start, 0)])
    complete = True
    while queue:
        roots, dist = queue.popleft()
        if depth is not None and dist >= depth:
            complete = False
            continue
        here = seen[frozenset(roots)]
        for i in range(1, len(roots) + 1):
            new = reflect_base(m, roots, i)
            key = frozenset(new)
            if key in seen:
                continue
            if len(states) >= max_states:
                return LinearOrbit(tuple(states), tuple(parents), False)
            seen[key] = len(states)
            states.append(new)
            parents.append((here, i))
            queue.append((new, dist + 1))
    # a depth cut only matters if it actually hid something
    if not complete:
        complete = all(frozenset(reflect_base(m, s, i)) in seen
                       for s in states for i in range(1, len(s) + 1))
    return LinearOrbit(tuple(states), tuple(parents), complete)


# ---------------------------------------------------------------------------
# weight sets and alpha-strings


@dataclass(frozen=True)
class Weight:
    coords: Vector
    parity: int


@dataclass(frozen=True)
class WeightSet:
    m: int
    n: int
    multiplicities: tuple[tuple[Vector, int], ...]
    label: str = "user"

    @classmethod
    def from_counter(cls, m: int, n: int, counts: Counter, label: str) -> WeightSet:
        items = tuple(sorted((tuple(k), v) for k, v in counts.items() if v > 0))
        return cls(m, n, items, label)

    @property
    def support(self) -> frozenset[Vector]:
        return frozenset(v for v, _ in self.multiplicities)

    @property
    def weights(self) -> tuple[Weight, ...]:
        return tuple(Weight(v, sum(v[self.m:]) % 2) for v, _ in self.multiplicities)

    def __len__(self) -> int:
        return len(self.multiplicities)

    def __contains__(self, v) -> bool:
        return tuple(v) in self.support


def _vec_counter(vectors: Iterable[Vector]) -> Counter:
    return Counter(tuple(v) for v in vectors)


def tautological(m: int, n: int) -> WeightSet:
    N = m + n
    return WeightSet.from_counter(m, n, _vec_counter(_unit(N, k) for k in range(N)), "tautological")


def dual(m: int, n: int) -> WeightSet:
    N = m + n
    return WeightSet.from_counter(
        m, n, _vec_counter(tuple(-x for x in _unit(N, k)) for k in range(N)), "dual")


def tensor(m: int, n: int, d: int) -> WeightSet:
    """Weights of V^{(x)d} with multinomial multiplicities."""
    N = m + n
    counts = Counter()
    for combo in itertools.combinations_with_replacement(range(N), d):
        c = Counter(combo)
        v = tuple(c.get(k, 0) for k in range(N))
        mult = math.factorial(d)
        for x in v:
            mult //= math.factorial(x)
        counts[v] = mult
    return WeightSet.from_counter(m, n, counts, f"tensor({d})")


def roots(m: int, n: int) -> list[Vector]:
    N = m + n
    return [_sub(_unit(N, a), _unit(N, b)) for a in range(N) for b in range(N) if a != b]


def adjoint(m: int, n: int) -> WeightSet:
    counts = _vec_counter(roots(m, n))
    counts[tuple(0 for _ in range(m + n))] = (m + n) - 1
    return WeightSet.from_counter(m, n, counts, "adjoint")


def _dominated(lam: Sequence[int]) -> list[Vector]:
    """Integer vectors whose weights lie in the gl irreducible of highest weight lam."""
    lam = list(lam)
    if any(a < b for a, b in zip(lam, lam[1:])):
        raise PreconditionError(f"highest weight {lam} is not dominant")
    if not lam:
        return [()]
    total, lo, hi = sum(lam), lam[-1], lam[0]
    prefix = list(itertools.accumulate(lam))
    out = []
    for v in itertools.product(range(lo, hi + 1), repeat=len(lam)):
        if sum(v) != total:
            continue
        s = sorted(v, reverse=True)
        if all(a <= b for a, b in zip(itertools.accumulate(s), prefix)):
            out.append(v)
    return out


def kac_module(m: int, n: int, lam_even: Sequence[int], lam_odd: Sequence[int]) -> WeightSet:
    """Weight set of the Kac module: top weights plus subset sums of delta_j - eps_i.

    Multiplicities are those of the supports only (one per distinct sum).
    """
    if len(lam_even) != m or len(lam_odd) != n:
        raise PreconditionError("highest weight has the wrong number of coordinates")
    N = m + n
    tops = [a + b for a in _dominated(lam_even) for b in _dominated(lam_odd)]
    lowering = [_sub(_unit(N, m + j), _unit(N, i)) for i in range(m) for j in range(n)]
    shifts = set()
    for r in range(len(lowering) + 1):
        for combo in itertools.combinations(lowering, r):
            v = tuple(0 for _ in range(N))
            for x in combo:
                v = _add(v, x)
            shifts.add(v)
    counts = Counter({_add(t, s): 1 for t in tops for s in shifts})
    label = f"kac({','.join(map(str, lam_even))}|{','.join(map(str, lam_odd))})"
    return WeightSet.from_counter(m, n, counts, label)


def builtin_weight_sets(m: int, n: int, max_degree: int = 3) -> list[WeightSet]:
    out = [tautological(m, n), dual(m, n), adjoint(m, n)]
    out += [tensor(m, n, d) for d in range(2, max_degree + 1)]
    return out


@dataclass(frozen=True)
class AlphaString:
    p: int
    q: int

    @property
    def length(self) -> int:
        """The stated length p + q - 1 (the string itself has p + q + 1 elements)."""
        return self.p + self.q - 1

    @property
    def size(self) -> int:
        return self.p + self.q + 1


def _as_vec(x) -> Vector:
    if isinstance(x, Weight):
        return x.coords
    return tuple(int(c) for c in x)


def alpha_string(G: WeightSet, gamma, alpha) -> AlphaString:
    g, a = _as_vec(gamma), _as_vec(alpha)
    sup = G.support
    if g not in sup:
        raise PreconditionError(f"{g} is not a weight of {G.label}")
    if not any(a):
        raise PreconditionError("alpha must be nonzero")
    p = 0
    while _add(g, a, p + 1) in sup:
        p += 1
    q = 0
    while _add(g, a, -(q + 1)) in sup:
        q += 1
    return AlphaString(p, q)


def reflect_weight(G: WeightSet, gamma, alpha) -> Vector:
    s = alpha_string(G, gamma, alpha)
    return _add(_as_vec(gamma), _as_vec(alpha), s.p - s.q)


Letter = Union[int, Sequence[int]]


def reflection_map(G: WeightSet, alpha) -> dict[Vector, Vector]:
    return {g: reflect_weight(G, g, alpha) for g in sorted(G.support)}


def apply_word(word: Sequence[Letter], G: WeightSet,
               base: Sequence[Vector] | None = None) -> dict[Vector, Vector]:
    """The composite r_{w_1} o ... o r_{w_k} on G (rightmost letter acts first).

    Integer letters are nodes of ``base`` (default: the distinguished base);
    vector letters are roots.
    """
    if base is None:
        base = ParityWord.distinguished(G.m, G.n).simple_roots()
    maps = []
    for letter in word:
        if isinstance(letter, int):
            if not 1 <= letter <= len(base):
                raise PreconditionError(f"node {letter} out of range")
            alpha = base[letter - 1]
        else:
            alpha = tuple(letter)
        maps.append(reflection_map(G, alpha))
    result = {g: g for g in G.support}
    for r in reversed(maps):
        result = {g: r[v] for g, v in result.items()}
    return result


def permutation_order(perm: dict) -> int:
    seen, order = set(), 1
    for start in perm:
        if start in seen:
            continue
        length, x = 0, start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        order = math.lcm(order, length)
    return order


def order_on(word: Sequence[Letter], G: WeightSet, base: Sequence[Vector] | None = None) -> int:
    return permutation_order(apply_word(word, G, base))


def even_weyl_action(m: int, word: Sequence[int], v: Sequence[int],
                     base: Sequence[Vector]) -> Vector:
    """Linear action of a word in white simple reflections on a vector."""
    v = tuple(v)
    for node in reversed(word):
        a = base[node - 1]
        aa = form(m, a, a)
        if aa == 0:
            raise PreconditionError(f"node {node} is grey")
        c = Fraction(2 * form(m, v, a), aa)
        v = _add(v, a, -int(c))
    return v


# ---------------------------------------------------------------------------
# Coxeter relation checks


@dataclass(frozen=True)
class Relation:
    kind: str  # square | braid | commute | infinite
    nodes: tuple[int, ...]
    expected: str
    orders: tuple[int, ...]
    passed: bool


@dataclass(frozen=True)
class CoxeterReport:
    m: int
    n: int
    d_max: int
    floor: int
    diagram: str
    weight_sets: tuple[str, ...]
    relations: tuple[Relation, ...]
    diagnostics: tuple[tuple[str, tuple[tuple[str, int], ...]], ...] = field(default=())
    note: str = ("orders are computed on tensor-power weight sets only; "
                 "passing checks do not certify relations of the whole group")

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.relations)


def check_coxeter(m: int, n: int, d_max: int, floor: int = 12,
                  extra: Sequence[WeightSet] = ()) -> CoxeterReport:
    """Check the distinguished-diagram relations of sl(m|n) on weights of V^{(x)d}, d <= d_max.

    ``extra`` weight sets are not part of the verdict; the orders of all
    relation words on them are listed under ``diagnostics``.
    """
    if m + n > 6 or m + n < 2 or min(m, n) < 0:
        raise PreconditionError("need 2 <= m + n <= 6")
    if not 1 <= d_max <= 6:
        raise PreconditionError("need 1 <= d_max <= 6")
    w = ParityWord.distinguished(m, n)
    base = w.simple_roots()
    N = w.nodes
    sets = [tensor(m, n, d) for d in range(1, d_max + 1)]
    rels = []
    words = []
    for i in range(1, N + 1):
        orders = tuple(order_on([i], G, base) for G in sets)
        rels.append(Relation("square", (i,), "order divides 2", orders, all(o in (1, 2) for o in orders)))
        words.append((f"r{i}", [i]))
    for i, j in itertools.combinations(range(1, N + 1), 2):
        orders = tuple(order_on([i, j], G, base) for G in sets)
        words.append((f"r{i}r{j}", [i, j]))
        if j - i > 1:
            rels.append(Relation("commute", (i, j), "order divides 2", orders,
                                 all(2 % o == 0 for o in orders)))
        elif not w.is_grey(i) and not w.is_grey(j):
            rels.append(Relation("braid", (i, j), "order divides 3", orders,
                                 all(3 % o == 0 for o in orders)))
        else:
            ok = orders[-1] > floor and all(a <= b for a, b in zip(orders, orders[1:]))
            rels.append(Relation("infinite", (i, j), f"order > {floor}, nondecreasing in d",
                                 orders, ok))
    diag = tuple((G.label, tuple((name, order_on(wd, G, base)) for name, wd in words))
                 for G in extra)
    return CoxeterReport(m, n, d_max, floor, w.diagram(), tuple(G.label for G in sets),
                         tuple(rels), diag)


__all__ = [
    "AlphaString", "BaseGraph", "CartanMatrix", "CoxeterReport", "LinearOrbit", "ParityWord",
    "Relation", "Weight", "WeightSet", "adjoint", "alpha_string", "apply_word",
    "builtin_weight_sets", "cartan_from_roots", "cartan_matrix", "check_coxeter", "dual",
    "enumerate_bases", "even_weyl_action", "form", "kac_module", "linear_reflection",
    "linear_weyl_orbit", "odd_reflection", "order_on", "permutation_order", "reflect_base",
    "reflect_weight", "reflection_map", "roots", "tautological", "tensor",
]
