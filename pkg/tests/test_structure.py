import random
from fractions import Fraction as Q

import pytest

from bairelab import cells as cs
from bairelab import engine as eng
from bairelab import functions as fn
from bairelab import structure as st
from bairelab.ordinals import cmp, nat, omega_pow
from conftest import sample_address


def test_build_type_validation():
    with pytest.raises(st.BadParams):
        st.build_type(5, 1, 2)
    with pytest.raises(st.BadParams):
        st.build_type(0, 1, 0)


def test_address_round_trip_and_eval():
    F = st.build_type(1, 2, 2)
    assert st.parse_address("/1/3/2") == (1, 3, 2)
    assert st.format_address((1, 3, 2)) == "/1/3/2"
    with pytest.raises(st.BadAddress):
        st.parse_address("1/2")
    # the empty address names the cluster point of the root
    assert st.struct_eval(F, ()) == st.struct_eval(F, st.parse_address("/"))


def test_tail_sup_matches_first_fifty_copies():
    # the supremum over a decaying tail is attained within the first
    # copies; scanning 50 of them must reproduce sup_value exactly
    for F in (st.build_type(0, 1, 3), st.build_type(1, 2, 2), st.build_type(2, 1, 2)):
        rng = random.Random(13)
        best = Q(0)
        for _ in range(400):
            addr = sample_address(F.root, rng)
            if all(c <= 50 for c in addr):
                best = max(best, abs(st.struct_eval(F, addr)))
        assert best == st.sup_value(F.root)


@pytest.mark.parametrize("level", [2, 3])
def test_truncation_error_bound(level):
    # dropping copies past the level costs at most 1/(k+m)
    for n, m, k in ((0, 1, 3), (1, 2, 2), (2, 1, 3)):
        F = st.build_type(n, m, k)
        err = st.truncation_error(F, level)
        assert err <= Q(1, k + m)
        Fk = st.truncate(F, level)
        rng = random.Random(level)
        for _ in range(100):
            addr = sample_address(F.root, rng)
            assert abs(st.struct_eval(F, addr) - st.struct_eval(Fk, addr)) <= err


def test_flatten_type0_equals_interval_model():
    for k in (2, 3):
        F = st.build_type(0, 1, k)
        space, flat = st.flatten(F)
        ref = fn.type0(k)
        assert cmp(space.top, ref.space.top) == 0
        rng = random.Random(k)
        for _ in range(60):
            x = cs.random_point(space.top, rng)
            assert fn.eval_fn(flat, x) == fn.eval_fn(ref, x)


def test_flatten_blocks_are_rank_homogeneous():
    F = st.truncate(st.build_type(1, 2, 2), 2)
    space, flat = st.flatten(F)
    assert flat.blocks
    for a, b in flat.blocks:
        assert cmp(a, b) <= 0
        assert cmp(b, space.top) <= 0


@pytest.mark.parametrize("n", range(1, 5))
def test_struct_and_interval_traces_agree(n):
    F = st.build_type(0, 1, n)
    _, flat = st.flatten(F)
    tr_s = st.struct_index(F, "beta", Q(1, n))
    tr_i = eng.beta_index(flat, Q(1, n))
    assert len(tr_s.stages) == len(tr_i.stages)
    for sset, (_, s_int) in zip(tr_s.stages, tr_i.stages):
        assert cs.sets_equal(st.sset_to_set(F, sset), s_int)
    assert tr_s.terminal[0] == tr_i.terminal[0]
    assert cmp(nat(tr_s.terminal[1]), tr_i.terminal[1]) == 0


def test_struct_filter_commutes_with_flattening():
    # filtering structurally then converting equals converting then
    # filtering on the interval model
    F = st.truncate(st.build_type(1, 2, 2), 2)
    _, flat = st.flatten(F)
    s0 = st.full_sset(F.root)
    s1 = st.osc_filter_struct(F.root, s0, Q(1, 2), 0, Q(1))
    lhs = st.sset_to_set(F, s1)
    rhs = fn.osc_filter(flat, cs.full_set(flat.space), Q(1, 2))
    assert cs.sets_equal(lhs, rhs)


def test_struct_chain_bound_small_types():
    assert st.struct_chain_bound(st.build_type(0, 1, 2)) <= Q(4)
    assert st.struct_chain_bound(st.build_type(1, 1, 3)) <= Q(4)


def test_prop53a_assembly_shape():
    f = fn.gallery("prop53a", 2)
    assert f.label.startswith("prop53a")
    assert f.blocks
    assert f.sup_norm() <= Q(1, 2)
    assert Q(0) in f.values()
    rep_vals = set(f.values())
    assert len(rep_vals) > 2


def test_struct_eval_bad_address():
    F = st.build_type(0, 1, 2)
    with pytest.raises(st.BadAddress):
        st.struct_eval(F, (0,))
