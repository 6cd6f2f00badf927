import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import parity_functions
from oracles import block_density_range, brute_odd
from superglinf import sampling
from superglinf.core import P_EVEN, P_ODD, P_PLUS, P_ST, ParityFunction
from superglinf.errors import PreconditionError, UnsupportedCaseError
from superglinf.invariants import (
    BlockParity, Schedule, ScheduleError, classify, default_schedule, density, equivalent,
    is_tight, max_run, normalizes, odd_count, replays, sigma_p, spectrum,
)
from superglinf.permutations import act_on_parity, identity, membership, relabel, shift, tau

P011 = ParityFunction.periodic("011")


def test_odd_count_examples():
    assert odd_count(P_ST, 0, 3) == 2
    assert odd_count(P_PLUS, -4, -1) == 0
    assert odd_count(P_ST, -5, 5) == brute_odd(P_ST, -5, 5) == 6
    with pytest.raises(PreconditionError):
        odd_count(P_ST, 3, 2)


def test_density_examples():
    assert density(P_ST, 0, 4) == Fraction(1, 2)
    assert density(P_ODD, 2, 7) == Fraction(6, 5)
    assert all(density(P_PLUS, -2 * n, -1) == 0 for n in range(1, 20))
    with pytest.raises(PreconditionError):
        density(P_ST, 3, 3)


def test_classify_examples():
    assert classify(P_ST).label == "Inf"
    c = classify(P_PLUS)
    assert c.counts.odd_neg == 1 and c.counts.even_pos == 0
    assert c.counts.even_neg == math.inf and c.counts.odd_pos == math.inf
    assert not c.finite
    one = ParityFunction(0, (1,), (0,), (0,))
    c = classify(one)
    assert c.finite and c.label == "(∞|1)"


def test_all_non_finite_patterns_occur():
    labels = set()
    for l in ("0", "1", "01"):
        for r in ("0", "1", "01"):
            c = classify(ParityFunction(0, (), tuple(map(int, l)), tuple(map(int, r))))
            if not c.finite:
                labels.add(c.label)
    assert len(labels) == 7


def test_spectrum_exact_values():
    assert spectrum(P_ST, "right").lower == spectrum(P_ST, "right").upper == Fraction(1, 2)
    assert spectrum(P_PLUS, "left").upper == 0
    assert spectrum(P_PLUS, "right").lower == 1
    assert spectrum(P011, "left").exact


def test_block_spectrum_matches_analytic_oracle():
    lo, hi = block_density_range(2)
    est = spectrum(BlockParity(0, geometric=2), "right")
    assert abs(est.lower - lo) <= Fraction(2, 100)
    assert abs(est.upper - hi) <= Fraction(2, 100)
    assert est.drift < Fraction(2, 100)
    left = spectrum(BlockParity(0, geometric=2), "left")
    assert abs(left.lower - lo) <= Fraction(2, 100)


def test_block_parity_counts():
    b = BlockParity(1, geometric=3)
    assert [b(i) for i in range(0, 13)] == [1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1]
    assert all(b(-1 - i) == b(i) for i in range(50))
    for a, c in [(-40, 30), (-7, -1), (0, 0), (5, 100)]:
        assert b.count(a, c) == brute_odd(b, a, c)


def test_schedule_validation():
    with pytest.raises(ScheduleError):
        spectrum(P_ST, "right", Schedule(((5, 10), (4, 12))))
    with pytest.raises(ScheduleError):
        spectrum(P_ST, "right", Schedule(((5, 10), (6, 9))))
    default_schedule().validate()


def test_tightness_examples():
    assert is_tight(P_ST, 1)
    assert not any(is_tight(P_PLUS, c) for c in (1, 5, 100))
    p = ParityFunction.periodic("0011")
    assert not is_tight(p, 1) and is_tight(p, 2)
    assert max_run(BlockParity(0, geometric=2)) == math.inf
    assert max_run(BlockParity(0, polynomial=0)) == 2


def test_sigma_p_examples():
    s = sigma_p(P_ST)
    assert [s(x) for x in (0, 1, 2, -1, -2)] == [0, 1, 2, -1, -2]
    assert s == identity()
    s = sigma_p(P011)
    assert membership(s, "Sg").member
    q = relabel(s, P011)
    assert all(q(i) == P_ST(i) for i in range(-30, 31))
    with pytest.raises(PreconditionError):
        sigma_p(P_PLUS)


@given(st.integers(0, 10**6))
def test_sigma_p_normalizes_random_inf(seed):
    p = sampling.inf_parity_function(random.Random(seed))
    assert normalizes(p)
    assert relabel(sigma_p(p), p) == P_ST


def test_equivalence_examples():
    a = ParityFunction(0, (1,), (0,), (0,))
    b = ParityFunction(5, (1,), (0,), (0,))
    w = equivalent(a, b, "Sc")
    assert w.equivalent and replays(w, a, b)
    shifted = act_on_parity(shift(1), P_ST)
    w = equivalent(P_ST, shifted, "Sg")
    assert w.equivalent and replays(w, P_ST, shifted)
    w = equivalent(P_ST, P011, "Sn")
    assert not w.equivalent
    assert equivalent(P_ST, P011, "Sg").equivalent


def test_equivalence_uses_tau_twist():
    swapped = act_on_parity(tau(), P_PLUS)
    assert classify(swapped).label != classify(P_PLUS).label
    w = equivalent(P_PLUS, swapped, "Sg")
    assert w.equivalent and w.via_tau and replays(w, P_PLUS, swapped)


def test_finite_versus_non_finite():
    assert not equivalent(ParityFunction(0, (1,), (0,), (0,)), P_ST, "Sg").equivalent
    assert not equivalent(P_EVEN, P_ODD, "Sg").equivalent


def test_unsupported_cases():
    with pytest.raises(UnsupportedCaseError):
        equivalent(P_ST, P_ST, "SZ")
    with pytest.raises(UnsupportedCaseError):
        equivalent(BlockParity(0, geometric=2), P_ST, "Sg")


@given(parity_functions, parity_functions, st.sampled_from(["Sc", "Sn", "Sm", "Sg"]))
def test_equivalence_witnesses_replay(p1, p2, group):
    w = equivalent(p1, p2, group)
    if w.equivalent:
        assert replays(w, p1, p2)
        assert membership(w.sigma, group).member


@given(st.integers(0, 10**6))
def test_transported_functions_are_equivalent(seed):
    rng = random.Random(seed)
    p = sampling.parity_function(rng)
    s = sampling.bounded_permutation(rng)
    q = act_on_parity(s, p)
    for group in ("Sc", "Sg"):
        w = equivalent(p, q, group)
        assert w.equivalent, w.reason
        assert replays(w, p, q)
    assert classify(p).label == classify(q).label
