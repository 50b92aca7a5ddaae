from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from bairelab.ordinals import (
    OMEGA,
    ONE,
    ZERO,
    NonCanonical,
    ParseError,
    add,
    classify_point,
    cmp,
    complexity,
    format_ordinal,
    fundamental_seq,
    nat,
    omega_pow,
    parity_of_rank,
    parse_ordinal,
    pred,
    rank,
    sub,
    succ,
)
from conftest import ordinals


@given(ordinals())
def test_format_parse_round_trip(x):
    assert parse_ordinal(format_ordinal(x)) == x


@pytest.mark.parametrize(
    "text,canonical",
    [
        ("0", "0"),
        ("w", "w"),
        ("w^2*3 + w + 5", "w^2*3 + w + 5"),
        ("w^w", "w^(w)"),
        ("w^w^2", "w^(w^2)"),
        ("w^(w + 1)*2", "w^(w + 1)*2"),
    ],
)
def test_parse_known_forms(text, canonical):
    assert format_ordinal(parse_ordinal(text)) == canonical


@pytest.mark.parametrize("bad", ["w +", "w^", "w^2 + w^3", "w*0", "x", "w^2 w"])
def test_parse_rejects(bad):
    with pytest.raises((ParseError, NonCanonical)):
        parse_ordinal(bad)


@given(ordinals(), ordinals(), ordinals())
def test_add_associative(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))


@given(ordinals(), ordinals())
def test_add_right_monotone(a, b):
    assert cmp(add(a, b), a) >= 0
    if not b.is_zero():
        assert cmp(add(a, b), a) > 0


@given(ordinals(), ordinals())
def test_sub_is_left_inverse(a, b):
    if cmp(a, b) <= 0:
        assert add(a, sub(b, a)) == b


@given(ordinals())
def test_succ_pred_inverse(x):
    assert pred(succ(x)) == x
    assert cmp(succ(x), x) > 0


@given(ordinals(), ordinals(), ordinals())
def test_cmp_transitive(a, b, c):
    if cmp(a, b) <= 0 and cmp(b, c) <= 0:
        assert cmp(a, c) <= 0


@given(ordinals(), ordinals())
def test_cmp_antisymmetric(a, b):
    assert cmp(a, b) == -cmp(b, a)
    if cmp(a, b) == 0:
        assert a == b


def test_rank_is_last_exponent():
    assert rank(nat(5)) == ZERO
    assert rank(OMEGA) == ONE
    assert rank(parse_ordinal("w^2*3 + w")) == ONE
    assert rank(omega_pow(nat(2))) == nat(2)
    assert rank(parse_ordinal("w^w")) == OMEGA


@given(ordinals())
def test_parity_period_two(r):
    assert parity_of_rank(succ(succ(r))) == parity_of_rank(r)
    assert parity_of_rank(succ(r)) != parity_of_rank(r)


def test_parity_base_cases():
    # a point of rank r lives in layer 1 + r; isolated points (rank 0)
    # are the first, odd layer, while limit ranks keep their own subscript
    assert parity_of_rank(ZERO) == "odd"
    assert parity_of_rank(ONE) == "even"
    assert parity_of_rank(OMEGA) == "even"
    assert parity_of_rank(succ(OMEGA)) == "odd"


@given(ordinals(max_depth=1), hs.integers(min_value=1, max_value=6))
@settings(max_examples=60)
def test_fundamental_seq_increases_below_limit(x, n):
    if not x.is_limit() or x.is_zero():
        return
    a, b = fundamental_seq(x, n), fundamental_seq(x, n + 1)
    assert cmp(a, b) < 0
    assert cmp(b, x) < 0


def test_classify_point_kinds():
    assert classify_point(ZERO).kind == "zero"
    assert classify_point(nat(3)).kind == "successor"
    assert classify_point(OMEGA).kind == "limit"


def test_complexity_examples():
    assert complexity(ZERO) == 0
    assert complexity(ONE) == 1
    assert complexity(nat(4)) == 4
    assert complexity(OMEGA) == 2
    assert complexity(parse_ordinal("w + 1")) == 2


@given(ordinals())
def test_complexity_positive_on_nonzero(x):
    if not x.is_zero():
        assert complexity(x) >= 1
