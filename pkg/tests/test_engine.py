from fractions import Fraction as Q

import pytest

from bairelab import cells as cs
from bairelab import engine as eng
from bairelab import functions as fn
from bairelab.ordinals import OMEGA, cmp, nat, omega_pow, succ


def _gallery_instances():
    return [
        fn.gallery("f_delta", omega_pow(nat(2))),
        fn.gallery("type0", 3),
        fn.gallery("prop53b", 3),
        fn.gallery("prop53c"),
        fn.gallery("prop53d"),
    ]


@pytest.mark.parametrize("f", _gallery_instances(), ids=str)
def test_beta_stages_strictly_decrease(f):
    for delta in fn.value_gaps(f):
        tr = eng.beta_index(f, delta)
        prev = None
        for _, s in tr.stages:
            if prev is not None:
                assert cs.subset(s, prev)
                if not cs.is_empty(prev):
                    assert not cs.sets_equal(s, prev)
            prev = s


def test_beta_depends_only_on_gap_position():
    # thresholds falling between the same consecutive value gaps filter
    # identically, so inserting a non-gap delta changes nothing
    f = fn.gallery("prop53b", 3)
    gaps = fn.value_gaps(f)
    lo = gaps[0]
    between = (gaps[0] + gaps[1]) / 2
    assert between not in gaps
    tr1 = eng.beta_index(f, gaps[1])
    tr2 = eng.beta_index(f, between)
    assert len(tr1.stages) == len(tr2.stages)
    for (_, a), (_, b) in zip(tr1.stages, tr2.stages):
        assert cs.sets_equal(a, b)
    # and a strictly smaller threshold keeps at least as much
    tr0 = eng.beta_index(f, lo)
    for (_, big), (_, small) in zip(tr0.stages, tr1.stages):
        assert cs.subset(small, big)


def test_gen_with_constant_deltas_truncates_beta():
    f = fn.gallery("f_delta", omega_pow(nat(3)))
    d = Q(1)
    full = eng.beta_index(f, d)
    for L in (1, 2, 3):
        tr = eng.index_run(f, eng.gen_kind([d] * L))
        assert len(tr.stages) <= L + 1
        for (_, a), (_, b) in zip(tr.stages, full.stages):
            assert cs.sets_equal(a, b)


@pytest.mark.parametrize("n", range(1, 6))
def test_beta_sup_on_layer_indicators(n):
    f = fn.gallery("f_delta", omega_pow(nat(n)))
    bs = eng.beta_sup(f)
    assert bs.exact
    assert cmp(bs.value, nat(n + 1)) == 0


def test_beta_sup_transfinite():
    bs = eng.beta_sup(fn.gallery("prop53c"))
    assert bs.exact
    assert cmp(bs.value, succ(OMEGA)) == 0


def test_alpha_index_finite_on_bounded_rank_blocks():
    # regression: the omega-limit jump must not fire when every stage
    # cell has bounded rank; the two-sided index here is finite
    f = fn.gallery("prop53b", 3)
    tr = eng.index_run(f, eng.alpha_kind(Q(0), Q(1, 3)))
    kind, at = tr.terminal
    assert kind == "empty_at"
    assert at.is_finite()


def test_i_norms_known_values():
    n2 = eng.i_norms(fn.gallery("f_delta", omega_pow(nat(2))))
    assert n2.i_prime == Q(2) and n2.i_value == Q(2)
    n1 = eng.i_norms(fn.gallery("type0", 4))
    assert n1.i_prime == Q(1) and n1.i_value == Q(1)
    nc = eng.i_norms(fn.gallery("prop53c"))
    assert isinstance(nc.i_value, eng.Diverges)


def test_i_norms_cache_returns_same_object():
    f = fn.gallery("type0", 2)
    assert eng.i_norms(f) is eng.i_norms(f)


def test_best_chain_dominates_uniform_chains():
    f = fn.gallery("f_delta", omega_pow(nat(2)))
    res = eng.best_chain(f)
    for delta in fn.value_gaps(f):
        tr = eng.beta_index(f, delta)
        m = len([1 for _, s in tr.stages[1:] if not cs.is_empty(s)])
        assert res.total >= m * delta


def test_jump_sum_check_bounds():
    space = cs.SpaceTop(nat(1))
    flat = [fn.step_const(space, Q(0)) for _ in range(4)]
    assert eng.jump_sum_check(flat, Q(1, 2), Q(1)).passed
    alt = [fn.step_const(space, Q(k % 2)) for k in range(5)]
    res = eng.jump_sum_check(alt, Q(1, 2), Q(1))
    assert not res.passed and res.worst_sum > Q(1)
    with pytest.raises(eng.TooLong):
        eng.jump_sum_check([fn.step_const(space, Q(0))] * 17, Q(1, 2), Q(1))
    with pytest.raises(eng.BadParams):
        eng.jump_sum_check([fn.step_const(space, Q(1))] + alt[:2], Q(1, 2), Q(1))


def test_hilbert_cube_query_validation():
    with pytest.raises(eng.BadParams):
        eng.hilbert_cube_query("nonempty", 0, eps=Q(1, 2))
    with pytest.raises(eng.BadParams):
        eng.hilbert_cube_query("nonempty", 3, eps=Q(5, 2))
    out = eng.hilbert_cube_query("nonempty", 4, eps=Q(1, 2))
    assert out["nonempty"] is True
    out = eng.hilbert_cube_query("nonempty", 5, eps=Q(1, 2))
    assert out["nonempty"] is False


@pytest.mark.parametrize("f", _gallery_instances(), ids=str)
def test_classify_verdict_chain_is_monotone(f):
    rep = eng.classify(f)
    order = {"CertifiedNo": 0, "Unknown": 1, "PaperCited": 2, "CertifiedYes": 2}
    chain = [rep.continuous, rep.dbsc, rep.b14, rep.b12, rep.b1]
    seen_yes = False
    for v in reversed(chain):  # from B_1 down to continuity
        if order[v.status] == 0:
            seen_yes = False  # a No below forbids Yes further down
            assert not any(order[w.status] == 2 for w in chain[: chain.index(v)])
        if order[v.status] == 2:
            seen_yes = True
    assert rep.b1.status == "CertifiedYes"


def test_classify_known_verdicts():
    rep = eng.classify(fn.gallery("prop53d"))
    assert rep.continuous.status == "CertifiedNo"
    assert rep.dbsc.status == "CertifiedYes"
    rep = eng.classify(fn.gallery("prop53c"))
    assert rep.b12.status == "CertifiedNo"
    assert rep.b14.status == "CertifiedNo"
    const = fn.make_simple(
        cs.SpaceTop(OMEGA), [(cs.full_set(cs.SpaceTop(OMEGA)), Q(1, 2))]
    )
    rep = eng.classify(const)
    assert rep.continuous.status == "CertifiedYes"
