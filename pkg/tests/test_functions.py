import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from bairelab import cells as cs
from bairelab import functions as fn
from bairelab.ordinals import OMEGA, ZERO, add, nat, omega_pow, parse_ordinal, succ


def _gallery_instances():
    return [
        fn.gallery("f_delta", omega_pow(nat(2))),
        fn.gallery("type0", 3),
        fn.gallery("prop53b", 3),
        fn.gallery("prop53d"),
    ]


@pytest.mark.parametrize("f", _gallery_instances(), ids=str)
def test_parts_partition_the_space(f):
    total = cs.empty_set(f.space)
    for s, _ in f.parts:
        assert cs.is_empty(cs.intersect(total, s))
        total = cs.union(total, s)
    assert cs.sets_equal(total, cs.full_set(f.space))


@pytest.mark.parametrize("f", _gallery_instances(), ids=str)
def test_eval_agrees_with_level_sets(f):
    rng = random.Random(11)
    pts = [cs.random_point(f.space.top, rng) for _ in range(25)] + [ZERO, f.space.top]
    for x in pts:
        v = fn.eval_fn(f, x)
        assert cs.member(fn.level_set(f, "<=", v), x)
        assert cs.member(fn.level_set(f, ">=", v), x)
        for w in f.values():
            if w < v:
                assert not cs.member(fn.level_set(f, "<=", w), x)


def test_layer_indicator_values():
    f = fn.layer_indicator(omega_pow(nat(2)))
    # isolated points sit in the first (odd) layer: value 0 under 'even'
    assert fn.eval_fn(f, nat(7)) == 0
    assert fn.eval_fn(f, OMEGA) == 1
    assert fn.eval_fn(f, parse_ordinal("w*4")) == 1
    assert fn.eval_fn(f, omega_pow(nat(2))) == 0
    g = fn.layer_indicator(omega_pow(nat(2)), parity="odd")
    assert fn.eval_fn(g, nat(7)) == 1
    assert fn.eval_fn(g, OMEGA) == 0


def test_osc_filter_matches_pointwise_osc():
    f = fn.gallery("prop53b", 3)
    rng = random.Random(5)
    s = cs.full_set(f.space)
    for delta in (Q(1, 3), Q(1, 2), Q(1)):
        t = fn.osc_filter(f, s, delta)
        pts = cs.corner_points(t, extra=[cs.random_point(f.space.top, rng) for _ in range(15)])
        for x in pts:
            want = cs.member(s, x) and fn.osc_at(f, s, x) >= delta
            assert cs.member(t, x) == want


@given(hs.fractions(min_value=Q(-3), max_value=Q(3)))
@settings(max_examples=30, deadline=None)
def test_scale_is_pointwise(c):
    f = fn.gallery("type0", 2)
    g = fn.scale(c, f)
    rng = random.Random(3)
    for _ in range(10):
        x = cs.random_point(f.space.top, rng)
        assert fn.eval_fn(g, x) == c * fn.eval_fn(f, x)


def test_patch_evaluates_blockwise():
    f1 = fn.layer_indicator(OMEGA)
    f2 = fn.scale(Q(1, 2), fn.layer_indicator(omega_pow(nat(2))))
    a = succ(OMEGA)
    top = add(a, omega_pow(nat(2)))
    g = fn.patch(cs.SpaceTop(top), [(ZERO, OMEGA, f1), (a, top, f2)])
    assert fn.eval_fn(g, nat(4)) == fn.eval_fn(f1, nat(4))
    assert fn.eval_fn(g, OMEGA) == fn.eval_fn(f1, OMEGA)
    # second block re-rooted at w + 1
    assert fn.eval_fn(g, add(a, OMEGA)) == fn.eval_fn(f2, OMEGA)
    assert fn.eval_fn(g, top) == fn.eval_fn(f2, omega_pow(nat(2)))


def test_patch_fills_gaps_and_rejects_bad_blocks():
    f1 = fn.layer_indicator(OMEGA)
    # uncovered regions default to 0
    g = fn.patch(cs.SpaceTop(omega_pow(nat(2))), [(ZERO, OMEGA, f1)])
    assert fn.eval_fn(g, parse_ordinal("w*2")) == 0
    # a block cannot start at a limit ordinal (not clopen)
    with pytest.raises(fn.FnError):
        fn.patch(
            cs.SpaceTop(add(OMEGA, OMEGA)),
            [(ZERO, OMEGA, f1), (OMEGA, add(OMEGA, OMEGA), f1)],
        )
    # overlapping blocks are rejected
    with pytest.raises(fn.FnError):
        fn.patch(
            cs.SpaceTop(add(OMEGA, succ(OMEGA))),
            [(ZERO, OMEGA, f1), (ZERO, OMEGA, f1)],
        )


def test_restrict_extend_round_trip():
    f = fn.gallery("prop53b", 3)
    a, b = ZERO, omega_pow(nat(3))
    g = fn.restrict_extend(f, a, b)
    rng = random.Random(9)
    for _ in range(15):
        x = cs.random_point(b, rng)
        assert fn.eval_fn(g, x) == fn.eval_fn(f, x)


def test_step_fn_tiling_and_as_simple():
    space = cs.SpaceTop(OMEGA)
    s = fn.step_const(space, Q(2, 3))
    assert fn.eval_fn(s, nat(3)) == Q(2, 3)
    assert fn.eval_fn(s.as_simple(), OMEGA) == Q(2, 3)
    with pytest.raises(fn.FnError):
        fn.StepFn(space, ((ZERO, nat(3), Q(0)),))  # does not tile up to w


def test_value_gaps_are_positive_differences():
    f = fn.gallery("prop53b", 3)
    vals = f.values()
    gaps = fn.value_gaps(f)
    assert gaps == sorted({a - b for a in vals for b in vals if a > b})
    assert all(g > 0 for g in gaps)


def test_gallery_unknown_name():
    with pytest.raises(fn.FnError):
        fn.gallery("nonsense")
