import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superglinf import sampling
from superglinf.core import P_PLUS, P_ST, ParityFunction, SuperMatrix, bracket
from superglinf.errors import NotInGroupError, UnsupportedPermutationError
from superglinf.extension import ExtendedElement, extended_bracket
from superglinf.permutations import (
    FinPermutation, TailMap, act_on_parity, certify, compose, from_function, from_mapping,
    identity, invert, membership, phi_sigma, power, relabel, shift, stretch, swap, tau,
)

seeds = st.integers(0, 10**6)


def test_compose_and_invert_examples():
    assert compose(shift(1), shift(-1)) == identity()
    assert compose(swap(0, 1), swap(0, 1)) == identity()
    assert invert(shift(3)) == shift(-3)
    assert invert(identity()) == identity()
    assert invert(tau()) == tau()
    assert all(tau()(i) == -i - 1 for i in range(-10, 10))


@given(seeds)
def test_inverse_is_two_sided(seed):
    s = sampling.permutation(random.Random(seed))
    assert compose(s, invert(s)) == identity()
    assert compose(invert(s), s) == identity()
    assert all(invert(s)(s(i)) == i for i in range(-50, 51))


@given(seeds, seeds)
def test_compose_is_pointwise(a, b):
    s, t = sampling.permutation(random.Random(a)), sampling.permutation(random.Random(b))
    st_ = compose(s, t)
    assert all(st_(i) == s(t(i)) for i in range(-60, 61))


def test_non_bijective_stretch_rejected():
    # sigma(2m) = 3m, sigma(2m+1) = 3m + 2 misses every 3m + 1
    with pytest.raises(UnsupportedPermutationError):
        FinPermutation(0, (), TailMap.linear(0, 1), TailMap(2, ((0, 3), (2, 3))))


def test_stretch_is_a_bijection():
    s = stretch()
    values = sorted(s(i) for i in range(0, 300))
    assert values[:200] == list(range(200))
    assert compose(s, invert(s)) == identity()


def test_membership_examples():
    c = membership(shift(5), "Sc")
    assert c.member and c.witness == 5
    assert not membership(tau(), "Sg").member
    s = stretch()
    lam = membership(s, "Sl")
    assert lam.member and lam.witness == Fraction(1, 2)
    assert not membership(s, "So").member
    cert = certify(s)
    assert cert["Sg"].member and cert["Sm"].member


def test_tower_is_monotone():
    rng = random.Random(4)
    order = ("Sc", "So", "Sn", "Sm", "Sl", "Sg", "SZ")
    for _ in range(100):
        cert = certify(sampling.permutation(rng))
        flags = [cert[g].member for g in order]
        assert flags == sorted(flags)


def test_sg_witness_is_a_bound():
    rng = random.Random(7)
    for _ in range(60):
        s = sampling.permutation(rng)
        c = membership(s, "Sg")
        if c.member:
            assert all(s(i) * i > 0 for i in range(-200, 201) if abs(i) > c.witness)


def test_act_on_parity_examples():
    assert act_on_parity(identity(), P_ST) == P_ST
    shifted = act_on_parity(shift(1), P_ST)
    assert all(shifted(i) == (i + 1) % 2 for i in range(-10, 10))
    q = act_on_parity(tau(), P_PLUS)
    assert all(q(i) == (1 if i <= -1 else 0) for i in range(-5, 6))


@given(seeds)
def test_relabel_inverts_action(seed):
    rng = random.Random(seed)
    s, p = sampling.permutation(rng), sampling.parity_function(rng)
    assert relabel(s, act_on_parity(s, p)) == p


def test_from_function_round_trip():
    s = compose(stretch(), swap(-2, 5))
    again = from_function(s, -10, 10, 3, 3)
    assert again == s


def test_power():
    assert power(shift(2), 3) == shift(6)
    assert power(shift(2), -1) == shift(-2)


def ext(i, j, p=P_ST, v=1, z=0):
    return ExtendedElement(SuperMatrix.elementary(p, i, j, v), z)


def test_phi_sigma_examples():
    x = ext(3, -2, z=7)
    assert phi_sigma(identity(), x) == x
    assert phi_sigma(shift(1), ext(0, 0)) == ext(1, 1, p=relabel(shift(1), P_ST))
    y = phi_sigma(shift(1), ext(-1, -1))
    assert y.mat == SuperMatrix.elementary(y.mat.parity, 0, 0) and y.z == 2
    with pytest.raises(NotInGroupError):
        phi_sigma(tau(), x)


@given(seeds)
def test_phi_sigma_is_homomorphism(seed):
    rng = random.Random(seed)
    s = sampling.permutation(rng)
    if not membership(s, "Sg").member:
        return
    p = sampling.parity_function(rng)
    target = relabel(s, p)
    x = ExtendedElement(sampling.matrix(rng, p, degree=rng.randint(0, 1)), rng.randint(-3, 3))
    y = ExtendedElement(sampling.matrix(rng, p, degree=rng.randint(0, 1)), rng.randint(-3, 3))
    lhs = phi_sigma(s, extended_bracket(x, y), target=target)
    rhs = extended_bracket(phi_sigma(s, x, target=target), phi_sigma(s, y, target=target))
    assert lhs == rhs
