import random

import pytest
from hypothesis import strategies as hs

from bairelab import cells as cs
from bairelab import structure as st
from bairelab.ordinals import ZERO, Ordinal, cmp, nat, omega_pow


def _okey(o: Ordinal):
    def key(t: Ordinal):
        return tuple((key(e), c) for e, c in t.terms)

    return key(o)


def _assemble(pairs):
    # canonicalize: strictly decreasing exponents, coefficients merged
    seen = {}
    for e, c in pairs:
        seen[_okey(e)] = (e, min(seen.get(_okey(e), (e, 0))[1] + c, 9))
    terms = sorted(seen.values(), key=lambda t: _okey(t[0]), reverse=True)
    return Ordinal(tuple(terms))


def ordinals(max_depth: int = 2):
    """Random CNF ordinals with exponent nesting up to max_depth."""
    if max_depth <= 0:
        exps = hs.just(ZERO)
    else:
        exps = ordinals(max_depth - 1)
    pairs = hs.tuples(exps, hs.integers(min_value=1, max_value=4))
    return hs.lists(pairs, min_size=0, max_size=3).map(_assemble)


@hs.composite
def ordinal_pairs(draw, max_depth: int = 2):
    a = draw(ordinals(max_depth))
    b = draw(ordinals(max_depth))
    return (a, b) if cmp(a, b) <= 0 else (b, a)


def random_cell(top: Ordinal, rng: random.Random) -> cs.Cell:
    from bairelab.ordinals import add

    a, b = cs.random_point(top, rng), cs.random_point(top, rng)
    if cmp(a, b) > 0:
        a, b = b, a
    rlo = nat(rng.randrange(0, 3))
    rhi = None if rng.random() < 0.6 else add(rlo, nat(rng.randrange(1, 3)))
    return cs.Cell(a, b, rlo=rlo, rhi=rhi, parity=rng.choice(("any", "even", "odd")))


def random_set(top: Ordinal, rng: random.Random, max_cells: int = 3) -> cs.CanonicalSet:
    n = rng.randrange(1, max_cells + 1)
    return cs.make_set(cs.SpaceTop(top), [random_cell(top, rng) for _ in range(n)])


def sample_address(node: st.Node, rng: random.Random):
    """A random valid evaluation address of a structural function."""
    addr = []
    while True:
        if isinstance(node, st.Leaf):
            return addr
        if isinstance(node, st.Sum):
            c = rng.randrange(1, len(node.children) + 1)
            addr.append(c)
            node = node.children[c - 1]
            continue
        if rng.random() < 0.25:
            return addr  # stop at the cluster point
        c = rng.randrange(1, len(node.prefix) + 6)
        addr.append(c)
        node = node.prefix[c - 1] if c <= len(node.prefix) else node.tail.template


SMALL_TOPS = [
    omega_pow(nat(1)),
    omega_pow(nat(2)),
    omega_pow(nat(3)),
    nat(7),
]


@pytest.fixture
def rng():
    return random.Random(0xBA17E)
