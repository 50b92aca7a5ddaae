import dataclasses
import random
from fractions import Fraction as Q

import pytest

from bairelab import cells as cs
from bairelab import certs
from bairelab import functions as fn
from bairelab.ordinals import nat, omega_pow


W2 = fn.gallery("f_delta", omega_pow(nat(2)))
W3 = fn.gallery("f_delta", omega_pow(nat(3)))


def test_witness_values_stabilize_to_function_value(rng):
    for _ in range(20):
        x = cs.random_point(W3.space.top, rng)
        vals = certs.witness_values(W3, x)
        assert vals[-1] == fn.eval_fn(W3, x)


def test_witness_upper_dominates_sampled_variation(rng):
    for f in (W2, W3, fn.gallery("type0", 3)):
        c = certs.witness_upper(f)
        assert c.bound is not None
        for _ in range(25):
            x = cs.random_point(f.space.top, rng)
            assert certs.variation_at(f, x) <= c.bound
        assert certs.verify(c).ok


def test_witness_upper_diverges_with_chain_norm():
    c = certs.witness_upper(fn.gallery("prop53c"))
    assert c.bound is None


def test_dnorm_lower_below_witness_upper():
    for f in (W2, fn.gallery("type0", 2), fn.gallery("prop53d")):
        lo, hi = certs.dnorm_lower(f), certs.witness_upper(f)
        assert lo.bound is not None and hi.bound is not None
        assert lo.bound <= hi.bound
        assert certs.verify(lo).ok


def test_separation_soundness_and_tampering():
    c = certs.separate_by_D(W2, Q(0), Q(1))
    assert certs.verify(c).ok
    low = fn.level_set(W2, "<=", Q(0))
    high = fn.level_set(W2, ">=", Q(1))
    assert cs.subset(low, c.D)
    assert cs.is_empty(cs.intersect(c.D, high))
    bad = dataclasses.replace(c, D=cs.CanonicalSet(c.D.space, c.D.cells[:-1]))
    assert not certs.verify(bad).ok


def test_separation_requires_finite_two_sided_index():
    with pytest.raises(certs.CertError):
        certs.separate_by_D(fn.gallery("prop53c"), Q(0), Q(1))


@pytest.mark.parametrize("m", [2, 5, 9])
def test_approximant_error_and_telescoping(m, rng):
    c = certs.b14_approximant(W2, m)
    assert c.sup_error <= Q(1, m)
    assert certs.verify(c).ok
    for _ in range(20):
        x = cs.random_point(W2.space.top, rng)
        assert abs(fn.eval_fn(W2, x) - fn.eval_fn(c.G, x)) <= c.sup_error
    worse = dataclasses.replace(c, sup_error=c.sup_error / 2 if c.sup_error else Q(-1))
    assert not certs.verify(worse).ok


def test_approximant_rejects_range_outside_unit_interval():
    shifted = fn.scale(Q(3), W2)
    with pytest.raises(certs.CertError):
        certs.b14_approximant(shifted, 4)


def test_ps_decomposition_nested_and_stabilizing(rng):
    c = certs.ps_decomposition(W2, 4)
    assert certs.verify(c).ok
    sets = [set(map(str, s)) for s in c.sets]
    for a, b in zip(sets, sets[1:]):
        assert a <= b
    # every listed point's resolved value chain is eventually f(x)
    for x in c.sets[-1]:
        assert certs.witness_values(W2, x)[-1] == fn.eval_fn(W2, x)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_independent_family_patterns(m):
    f = fn.gallery("f_delta", omega_pow(nat(m + 1)))
    c = certs.independent_family(f, Q(0), Q(1), Q(1, 3), Q(2, 3), m)
    assert len(c.witnesses) == 2**m
    assert len({pat for pat, _ in c.witnesses}) == 2**m
    assert certs.verify(c).ok
    tampered = dataclasses.replace(c, witnesses=c.witnesses[:-1])
    assert not certs.verify(tampered).ok


def test_independent_family_validates_thresholds():
    with pytest.raises(certs.BadParams):
        certs.independent_family(W3, Q(0), Q(1), Q(2, 3), Q(1, 3), 2)
    with pytest.raises(certs.BudgetExceeded):
        certs.independent_family(W3, Q(0), Q(1), Q(1, 3), Q(2, 3), 13)


def test_cert_to_json_is_plain_data():
    import json

    for c in (
        certs.witness_upper(W2),
        certs.separate_by_D(W2, Q(0), Q(1)),
        certs.b14_approximant(W2, 3),
    ):
        payload = certs.cert_to_json(c)
        assert payload["kind"] == type(c).__name__
        assert {"subject", "claims", "evidence"} <= payload.keys()
        json.dumps(payload)  # must already be serializable


def test_witness_stage_is_step_function(rng):
    for k in (1, 2, 3):
        s = certs.witness_stage(W2, k)
        for _ in range(10):
            x = cs.random_point(W2.space.top, rng)
            assert fn.eval_fn(s, x) in W2.values()
