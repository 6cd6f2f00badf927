import itertools
import random
from math import comb, factorial

import pytest

from oracles import base_words
from superglinf.errors import PreconditionError
from superglinf.weyl import (
    ParityWord, adjoint, alpha_string, apply_word, builtin_weight_sets, cartan_matrix,
    check_coxeter, enumerate_bases, even_weyl_action, kac_module, linear_reflection,
    linear_weyl_orbit, odd_reflection, order_on, reflect_weight, roots, tautological, tensor,
)


def test_odd_reflection_examples():
    assert odd_reflection(ParityWord("EDD"), 1) == ParityWord("DED")
    w = ParityWord("ED")
    assert odd_reflection(odd_reflection(w, 1), 1) == w
    assert odd_reflection(ParityWord("EEDD"), 2) == ParityWord("EDED")
    with pytest.raises(PreconditionError):
        odd_reflection(ParityWord("EEDD"), 1)


@pytest.mark.parametrize("m,n", [(m, n) for m in range(1, 10) for n in range(1, 10) if m + n <= 10])
def test_enumerate_bases_matches_word_listing(m, n):
    g = enumerate_bases(m, n)
    assert len(g.nodes) == comb(m + n, m)
    assert {str(w) for w in g.nodes} == base_words(m, n)
    assert g.is_connected()


def test_small_base_graphs():
    assert {str(w) for w in enumerate_bases(1, 1).nodes} == {"ED", "DE"}
    g = enumerate_bases(2, 1)
    assert len(g.nodes) == 3 and len(g.edges) == 2
    assert g.to_dot().count("label=") == len(g.nodes) + len(g.edges)
    with pytest.raises(PreconditionError):
        enumerate_bases(7, 6)


def test_cartan_diagonal():
    A = cartan_matrix(ParityWord("EDED"))
    assert [A[i, i] for i in range(1, 4)] == [0, 0, 0]
    A = cartan_matrix(ParityWord("EEDD"))
    assert [A[i, i] for i in range(1, 4)] == [2, 0, 2]
    assert A.node_parities == ("○", "⊗", "○")


def test_linear_reflection_examples():
    A = cartan_matrix(ParityWord("EEE"))
    assert linear_reflection(A, 1, 1) == (-1, 0)
    assert linear_reflection(A, 1, 2) == (1, 1)
    A = cartan_matrix(ParityWord("ED"))
    assert linear_reflection(A, 1, 1) == (-1,)
    A = cartan_matrix(ParityWord("EDE"))
    assert linear_reflection(A, 1, 2) == (1, 1)


def test_linear_reflection_is_classical_on_even_words():
    # textbook A_{n-1}: s_i(alpha_j) = alpha_j - a_ij alpha_i with a = 2, -1, 0
    for n in range(2, 7):
        A = cartan_matrix(ParityWord("E" * n))
        for i, j in itertools.product(range(1, n), repeat=2):
            a_ij = 2 if i == j else (-1 if abs(i - j) == 1 else 0)
            expect = [0] * (n - 1)
            expect[j - 1] += 1
            expect[i - 1] -= a_ij
            assert list(linear_reflection(A, i, j)) == expect


@pytest.mark.parametrize("m,n", [(2, 0), (1, 1), (2, 1), (2, 2), (3, 1), (3, 2)])
def test_linear_orbit_reaches_every_base(m, n):
    orbit = linear_weyl_orbit(m, n)
    assert orbit.complete
    assert len(orbit.states) == factorial(m + n)
    if n:
        assert all(orbit.contains(w.simple_roots()) for w in enumerate_bases(m, n).nodes)


def test_linear_orbit_small_cases():
    assert len(linear_weyl_orbit(2, 0).states) == 2
    assert len(linear_weyl_orbit(1, 1).states) == 2
    partial = linear_weyl_orbit(2, 2, depth=1)
    assert not partial.complete


def test_alpha_string_examples():
    G = tautological(1, 1)
    s = alpha_string(G, (0, 1), (1, -1))
    assert (s.p, s.q) == (1, 0)
    assert s.length == 0 and s.size == 2
    assert reflect_weight(G, (0, 1), (1, -1)) == (1, 0)
    A = adjoint(2, 0)
    s = alpha_string(A, (0, 0), (1, -1))
    assert (s.p, s.q) == (1, 1)
    assert reflect_weight(A, (0, 0), (1, -1)) == (0, 0)
    assert alpha_string(tautological(3, 0), (1, 0, 0), (0, 1, -1)).p == 0
    T = tautological(2, 0)
    assert reflect_weight(T, (1, 0), (1, -1)) == (0, 1)
    assert reflect_weight(T, (0, 1), (1, -1)) == (1, 0)
    with pytest.raises(PreconditionError):
        alpha_string(T, (2, 0), (1, -1))


def test_order_examples():
    assert order_on([1, 2], tautological(3, 0)) == 3
    for G in builtin_weight_sets(2, 1):
        assert order_on([1], G) in (1, 2)


def _weight_sets(m, n):
    sets = builtin_weight_sets(m, n, max_degree=3)
    sets.append(kac_module(m, n, (1,) + (0,) * (m - 1), (0,) * n))
    return sets


SMALL = [(m, n) for m in range(1, 5) for n in range(0, 4) if 2 <= m + n <= 5]


@pytest.mark.parametrize("m,n", SMALL)
def test_string_reflection_squares_and_signs(m, n):
    for G in _weight_sets(m, n):
        for a in roots(m, n):
            assert order_on([a, a], G) == 1
            neg = tuple(-x for x in a)
            assert apply_word([a], G) == apply_word([neg], G)


@pytest.mark.parametrize("m,n", SMALL)
def test_string_reflection_conjugation(m, n):
    rng = random.Random(m * 10 + n)
    base = ParityWord.distinguished(m, n).simple_roots()
    white = [i + 1 for i, a in enumerate(base) if sum(x * x for x in a[:m]) != sum(x * x for x in a[m:])]
    if not white:
        return
    for G in _weight_sets(m, n):
        for _ in range(6):
            w = [rng.choice(white) for _ in range(rng.randint(1, 4))]
            alpha = rng.choice(roots(m, n))
            w_alpha = even_weyl_action(m, w, alpha, base)
            lhs = apply_word([w_alpha], G, base)
            rhs = apply_word(list(w) + [alpha] + list(reversed(w)), G, base)
            assert lhs == rhs


def test_tensor_weights():
    T = tensor(2, 1, 3)
    assert len(T) == comb(5, 2)
    assert sum(mult for _, mult in T.multiplicities) == 27


def test_coxeter_pure_even():
    r = check_coxeter(3, 0, 4)
    assert r.passed
    assert {x.kind for x in r.relations} == {"square", "braid"}


def test_coxeter_relation_shapes():
    r = check_coxeter(2, 2, 3)
    kinds = {x.nodes: x.kind for x in r.relations}
    assert kinds == {(1,): "square", (2,): "square", (3,): "square",
                     (1, 2): "infinite", (2, 3): "infinite", (1, 3): "commute"}
    assert all(x.passed for x in r.relations if x.kind != "infinite")


def test_tensor_weights_see_grey_pairs_as_order_three():
    # every string reflection on V^(x)d swaps two coordinates, so the
    # group generated on these sets is a symmetric group
    for m, n in [(2, 1), (2, 2), (3, 2)]:
        r = check_coxeter(m, n, 4)
        assert {x.orders for x in r.relations if x.kind == "infinite"} == {(3, 3, 3, 3)}


def test_kac_module_orders_exceed_three():
    assert order_on([1, 2], kac_module(2, 1, (2, 0), (0,))) == 8
    assert order_on([1, 2], kac_module(2, 1, (4, 0), (0,))) == 12
    K = kac_module(3, 2, (2, 0, 0), (0, 0))
    assert order_on([1, 2], K) == 3
    assert order_on([2, 3], K) > 12
