import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from bairelab import cells as cs
from bairelab.ordinals import OMEGA, ZERO, cmp, nat, omega_pow, parse_ordinal
from conftest import SMALL_TOPS, random_set


def _samples(top, sets, rng, extra=5):
    pts = []
    for s in sets:
        pts.extend(cs.corner_points(s))
    pts.extend(cs.random_point(top, rng) for _ in range(extra))
    return pts


@given(hs.integers(min_value=0, max_value=2**31), hs.sampled_from(range(len(SMALL_TOPS))))
@settings(max_examples=120, deadline=None)
def test_algebra_matches_pointwise_semantics(seed, ti):
    rng = random.Random(seed)
    top = SMALL_TOPS[ti]
    A, B = random_set(top, rng), random_set(top, rng)
    u, i, d, c = cs.union(A, B), cs.intersect(A, B), cs.diff(A, B), cs.complement(A)
    for x in _samples(top, (A, B, u, i, d, c), rng):
        ma, mb = cs.member(A, x), cs.member(B, x)
        assert cs.member(u, x) == (ma or mb)
        assert cs.member(i, x) == (ma and mb)
        assert cs.member(d, x) == (ma and not mb)
        assert cs.member(c, x) == (not ma)


@given(hs.integers(min_value=0, max_value=2**31), hs.sampled_from(range(len(SMALL_TOPS))))
@settings(max_examples=80, deadline=None)
def test_derived_and_closure_match_oracle(seed, ti):
    rng = random.Random(seed)
    top = SMALL_TOPS[ti]
    A = random_set(top, rng)
    dA, clA = cs.derived(A), cs.closure(A)
    for x in _samples(top, (A, dA, clA), rng):
        assert cs.member(dA, x) == cs.is_limit_point_oracle(A, x)
        assert cs.member(clA, x) == cs.closure_member_oracle(A, x)


@given(hs.integers(min_value=0, max_value=2**31))
@settings(max_examples=60, deadline=None)
def test_complement_involution_and_de_morgan(seed):
    rng = random.Random(seed)
    top = omega_pow(nat(2))
    A, B = random_set(top, rng), random_set(top, rng)
    assert cs.sets_equal(cs.complement(cs.complement(A)), A)
    assert cs.sets_equal(
        cs.complement(cs.union(A, B)),
        cs.intersect(cs.complement(A), cs.complement(B)),
    )


@given(hs.integers(min_value=0, max_value=2**31))
@settings(max_examples=60, deadline=None)
def test_subset_and_equality_consistent(seed):
    rng = random.Random(seed)
    top = omega_pow(nat(2))
    A, B = random_set(top, rng), random_set(top, rng)
    u = cs.union(A, B)
    assert cs.subset(A, u) and cs.subset(B, u)
    assert cs.sets_equal(u, A) == cs.subset(B, A)


@given(hs.integers(min_value=0, max_value=2**31))
@settings(max_examples=60, deadline=None)
def test_min_elem_is_least_member(seed):
    rng = random.Random(seed)
    top = omega_pow(nat(2))
    A = random_set(top, rng)
    m = cs.min_elem(A)
    if m is None:
        assert cs.is_empty(A)
        return
    assert cs.member(A, m)
    for x in _samples(top, (A,), rng):
        if cs.member(A, x):
            assert cmp(m, x) <= 0


def test_derived_of_full_space_drops_isolated_points():
    space = cs.SpaceTop(omega_pow(nat(2)))
    full = cs.full_set(space)
    d1 = cs.derived(full)
    assert not cs.member(d1, nat(5))
    assert cs.member(d1, OMEGA)
    d2 = cs.derived(d1)
    assert not cs.member(d2, OMEGA)
    assert cs.member(d2, space.top)
    assert cs.is_empty(cs.derived(d2))


def test_rank_and_parity_cells():
    space = cs.SpaceTop(omega_pow(nat(3)))
    evens = cs.make_set(space, [cs.Cell(ZERO, space.top, parity="even")])
    odds = cs.make_set(space, [cs.Cell(ZERO, space.top, parity="odd")])
    assert cs.is_empty(cs.intersect(evens, odds))
    assert cs.sets_equal(cs.union(evens, odds), cs.full_set(space))
    w2 = cs.make_set(space, [cs.Cell(ZERO, space.top, rlo=nat(2))])
    assert cs.member(w2, omega_pow(nat(2)))
    assert not cs.member(w2, parse_ordinal("w^2 + w"))


def test_out_of_space_rejected():
    space = cs.SpaceTop(OMEGA)
    with pytest.raises(cs.SetError):
        cs.make_set(space, [cs.Cell(ZERO, omega_pow(nat(2)))])
    s = cs.full_set(space)
    with pytest.raises(cs.SetError):
        cs.member(s, omega_pow(nat(2)))
