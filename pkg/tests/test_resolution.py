from hypothesis import given, settings
from hypothesis import strategies as hs

from bairelab import resolution as rs
from bairelab.ordinals import ZERO, cmp, complexity, nat, omega_pow, parse_ordinal
from conftest import ordinals


@given(ordinals(), hs.integers(min_value=1, max_value=5))
@settings(max_examples=150)
def test_ceil_above_is_sound(x, k):
    y = rs.ceil_above(x, k)
    if y is None:
        return
    assert cmp(y, x) >= 0
    assert complexity(y) <= k


@given(hs.integers(min_value=1, max_value=4))
@settings(max_examples=20, deadline=None)
def test_ceil_above_is_minimal(k):
    # oracle: exhaustively enumerate the stage-k revealed points
    top = omega_pow(nat(2))
    revealed = rs.enumerate_resolved(top, k)
    import random

    rng = random.Random(k)
    from bairelab import cells as cs

    for _ in range(40):
        x = cs.random_point(top, rng)
        y = rs.ceil_above(x, k)
        above = [z for z in revealed if cmp(z, x) >= 0 and complexity(z) <= k]
        if not above:
            assert y is None or cmp(y, top) > 0
        else:
            assert y is not None and cmp(y, above[0]) == 0


@given(ordinals())
def test_resolve_stabilizes_at_own_complexity(x):
    top = omega_pow(omega_pow(nat(2)))
    if cmp(x, top) > 0:
        return
    k = max(complexity(x), 1)
    assert rs.resolve(x, k, top) == x
    assert rs.resolve(x, k + 1, top) == x


@given(ordinals(max_depth=1), hs.integers(min_value=1, max_value=6))
@settings(max_examples=120)
def test_resolve_is_antitone_in_stage(x, k):
    top = omega_pow(nat(3))
    if cmp(x, top) > 0:
        return
    a, b = rs.resolve(x, k, top), rs.resolve(x, k + 1, top)
    assert cmp(b, a) <= 0
    assert cmp(b, x) >= 0


def test_resolution_stage_chain_examples():
    top = omega_pow(nat(2))
    x = parse_ordinal("w*3 + 4")  # complexity 4
    chain = rs.resolution_stages(x, top)
    assert chain[-1] == x
    for a, b in zip(chain, chain[1:]):
        assert cmp(b, a) <= 0
    assert rs.resolve(ZERO, 1, top) == ZERO


def test_enumerate_resolved_sorted_and_complete():
    top = omega_pow(nat(2))
    pts = rs.enumerate_resolved(top, 2)
    for a, b in zip(pts, pts[1:]):
        assert cmp(a, b) < 0
    for p in pts[:-1]:
        assert complexity(p) <= 2
    assert pts[-1] == top
    # stage 1 within [0, w^2]: complexity-1 points 0 and 1, plus the top
    stage1 = rs.enumerate_resolved(top, 1)
    assert [str(p) for p in stage1] == ["0", "1", "w^2"]
