from hypothesis import given, strategies as st

from conftest import homogeneous, named_or_random
from oracles import dense_bracket, dense_supertrace_J
from superglinf.core import P_EVEN, P_ST, SuperMatrix, bracket
from superglinf.extension import ExtendedElement, cocycle, extended_bracket


def e(i, j, p=P_ST):
    return SuperMatrix.elementary(p, i, j)


def test_cocycle_examples():
    assert cocycle(e(-1, 0), e(0, -1)) == -2
    a = e(2, 2) + e(-3, 4) * 2
    assert cocycle(a.with_parity(P_EVEN), a.with_parity(P_EVEN)) == 0
    assert cocycle(e(0, 1), e(2, 3)) == 0


def test_extended_bracket_examples():
    x, y = ExtendedElement(e(-1, 0)), ExtendedElement(e(0, -1))
    assert extended_bracket(x, y) == ExtendedElement(e(-1, -1) + e(0, 0), -2)
    central = ExtendedElement(SuperMatrix.zero(P_ST), 1)
    assert extended_bracket(central, ExtendedElement(e(3, 1), 5)) == ExtendedElement(SuperMatrix.zero(P_ST), 0)
    assert extended_bracket(ExtendedElement(e(0, 0)), ExtendedElement(e(1, 1))) == ExtendedElement(
        SuperMatrix.zero(P_ST), 0)


@given(named_or_random.flatmap(lambda p: st.tuples(st.just(p), homogeneous(p), homogeneous(p))))
def test_cocycle_matches_dense_oracle(args):
    p, a, b = args
    c = dense_bracket(dict(a.entries), dict(b.entries), p, -4, 4)
    assert cocycle(a, b) == dense_supertrace_J(c, p)


@given(named_or_random.flatmap(lambda p: st.tuples(st.just(p), homogeneous(p), homogeneous(p))))
def test_cocycle_super_antisymmetric(args):
    _, a, b = args
    sign = (-1) ** (a.degree() * b.degree())
    assert cocycle(a, b) == -sign * cocycle(b, a)
