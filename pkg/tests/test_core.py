from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import homogeneous, named_or_random, parity_functions
from oracles import brute_odd, dense_bracket, tail_words
from superglinf.core import (
    P_EVEN, P_ODD, P_PLUS, P_ST, Band, FiniteSupport, ParametricBand, ParityFunction,
    SuperMatrix, as_scalar, bracket, class_membership, evaluate_parity, homogeneous_part,
    support_profile, supertrace,
)
from superglinf.errors import ParityMismatchError, UnsupportedProfileError


def e(p, i, j, v=1):
    return SuperMatrix.elementary(p, i, j, v)


def test_evaluate_parity_examples():
    assert evaluate_parity(P_ST, 4) == 0
    assert evaluate_parity(P_ST, -3) == 1
    assert evaluate_parity(P_PLUS, -1) == 0
    assert P_PLUS(0) == 1


@given(st.integers(-5, 5), st.lists(st.integers(0, 1), max_size=6),
       st.lists(st.integers(0, 1), min_size=1, max_size=4),
       st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_presentation_matches_plain_evaluation(lo, window, left, right):
    p = ParityFunction(lo, tuple(window), tuple(left), tuple(right))
    f = tail_words(lo, window, left, right)
    assert all(p(i) == f(i) for i in range(-40, 41))


@given(parity_functions)
def test_canonical_form_is_unique(p):
    lo, hi = p.window_lo - 30, p.window_hi + 30
    again = ParityFunction.from_function(p, lo, hi, len(p.left_tail) * 2, len(p.right_tail) * 3)
    assert again == p
    assert hash(again) == hash(p)


@given(parity_functions, st.integers(-30, 30), st.integers(0, 40))
def test_count_matches_brute_force(p, a, width):
    b = a + width
    assert p.count(a, b, 1) == brute_odd(p, a, b)
    assert p.count(a, b, 0) == width + 1 - brute_odd(p, a, b)


def test_as_scalar_rejects_floats():
    assert as_scalar("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        as_scalar(0.5)


def test_bracket_examples():
    assert bracket(e(P_EVEN, 0, 1), e(P_EVEN, 1, 2)) == e(P_EVEN, 0, 2)
    assert bracket(e(P_ST, 0, 1), e(P_ST, 1, 0)) == e(P_ST, 0, 0) + e(P_ST, 1, 1)
    a = e(P_ST, 0, 2, 3) + e(P_ST, 1, 1, -2)
    assert bracket(a, a) == 0


def test_supertrace_examples():
    assert supertrace(e(P_ST, 0, 0)) == 1
    assert supertrace(e(P_ST, 1, 1)) == -1
    assert supertrace(bracket(e(P_ST, 0, 1), e(P_ST, 1, 0))) == 0


def test_homogeneous_part_examples():
    a = e(P_ST, 0, 1)
    assert homogeneous_part(a, 1) == a
    assert homogeneous_part(a, 0) == 0
    assert homogeneous_part(e(P_EVEN, 3, -2) + e(P_EVEN, 0, 0), 1) == 0


def test_mismatched_parities_rejected():
    with pytest.raises(ParityMismatchError):
        bracket(e(P_ST, 0, 1), e(P_PLUS, 1, 0))


@given(named_or_random.flatmap(lambda p: st.tuples(st.just(p), homogeneous(p), homogeneous(p))))
def test_bracket_matches_dense_oracle(args):
    p, a, b = args
    ref = dense_bracket(dict(a.entries), dict(b.entries), p, -4, 4)
    assert dict(bracket(a, b).entries) == ref


@given(named_or_random.flatmap(lambda p: st.tuples(st.just(p), homogeneous(p), homogeneous(p))))
def test_supertrace_kills_brackets(args):
    p, a, b = args
    assert supertrace(bracket(a, b)) == 0


def test_degree():
    assert e(P_ST, 0, 1).degree() == 1
    assert SuperMatrix.zero(P_ST).degree() == 0
    assert (e(P_ST, 0, 1) + e(P_ST, 0, 0)).degree() is None


def test_class_membership_examples():
    d = class_membership(Band(3), "c")
    assert d.member and d.witness == 3
    d = class_membership(ParametricBand(1, Fraction(1, 2)), "o")
    assert not d.member
    assert class_membership(ParametricBand(1, Fraction(1, 2)), "g").member
    lam = class_membership(ParametricBand(1, Fraction(1, 2)), "l")
    assert lam.member and lam.witness < 2
    assert class_membership(FiniteSupport(frozenset({(0, 5)})), "g").member
    assert isinstance(support_profile(e(P_ST, 0, 5)), FiniteSupport)
    with pytest.raises(UnsupportedProfileError):
        class_membership(ParametricBand(1, Fraction(3, 2)), "g")


def test_builtins():
    assert P_ODD.complement() == P_EVEN
    assert P_ST == ParityFunction.periodic("01")
