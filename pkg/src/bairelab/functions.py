"""Finite-range functions on compact ordinal intervals.

SimpleFn: exact rational values on a disjoint covering family of
rank-definable sets — the Baire-1 inhabitants of this package.

StepFn: locally constant on clopen intervals (every left endpoint is 0
or a successor), hence continuous; these form the approximating
sequences of the certificate machinery.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from . import cells as cs
from .ordinals import ZERO, ONE, OMEGA, Ordinal, add, cmp, nat, omega_pow, rank, sub, succ

Q = Fraction


class FnError(Exception):
    pass


class PartitionGap(FnError):
    pass


class NotInSet(FnError):
    pass


class OverlappingSupports(FnError):
    pass


class NotClopen(FnError):
    pass


class UnknownGallery(FnError):
    pass


class BadParams(FnError):
    pass


@dataclass(frozen=True)
class SimpleFn:
    space: cs.SpaceTop
    parts: Tuple[Tuple[cs.CanonicalSet, Fraction], ...]
    label: str = ""
    # clopen block intervals for block-sum constructions (start, end)
    blocks: Optional[Tuple[Tuple[Ordinal, Ordinal], ...]] = None

    def values(self) -> List[Fraction]:
        seen = []
        for _, v in self.parts:
            if v not in seen:
                seen.append(v)
        return sorted(seen)

    def sup_norm(self) -> Fraction:
        return max((abs(v) for _, v in self.parts), default=Q(0))

    def __str__(self) -> str:
        return self.label or f"simple-fn on {self.space} with values {self.values()}"


def make_simple(
    space: cs.SpaceTop,
    parts: Sequence[Tuple[cs.CanonicalSet, Fraction]],
    label: str = "",
    blocks=None,
    validate: bool = True,
) -> SimpleFn:
    parts = tuple((s, Q(v)) for s, v in parts)
    if validate:
        cover = cs.empty_set(space)
        for s, _ in parts:
            if not cs.is_empty(cs.intersect(cover, s)):
                raise PartitionGap("parts overlap")
            cover = cs.union(cover, s)
        if not cs.sets_equal(cover, cs.full_set(space)):
            raise PartitionGap("parts do not cover the space")
    return SimpleFn(space, parts, label=label, blocks=blocks)


def eval_fn(f: "SimpleFn | StepFn", x: Ordinal) -> Fraction:
    if isinstance(f, StepFn):
        return f.eval(x)
    if x not in f.space:
        raise cs.OutOfSpace(f"{x} beyond {f.space.top}")
    for s, v in f.parts:
        if cs.member(s, x):
            return v
    raise PartitionGap(f"no part contains {x}")


def level_set(f: SimpleFn, rel: str, c: Fraction) -> cs.CanonicalSet:
    c = Q(c)
    if rel == "<=":
        keep = [s for s, v in f.parts if v <= c]
    elif rel == ">=":
        keep = [s for s, v in f.parts if v >= c]
    else:
        raise BadParams(f"rel must be <= or >=, got {rel!r}")
    out = cs.empty_set(f.space)
    for s in keep:
        out = cs.union(out, s)
    return out


def extrema_over(f: SimpleFn, s: cs.CanonicalSet) -> Optional[Tuple[Fraction, Fraction]]:
    """(inf, sup) of f over s, or None when s is empty."""
    vals = [v for p, v in f.parts if not cs.is_empty(cs.intersect(p, s))]
    if not vals:
        return None
    return min(vals), max(vals)


def active_values(f: SimpleFn, s: cs.CanonicalSet, x: Ordinal) -> List[Fraction]:
    """Values attained on every punctured-or-not tail neighborhood of x in s:
    v_i is active iff x lies in the closure of part_i intersect s."""
    out = []
    for p, v in f.parts:
        ps = cs.intersect(p, s)
        if cs.member(ps, x) or cs.member(cs.closure(ps), x):
            if v not in out:
                out.append(v)
    return out


def osc_at(f: SimpleFn, s: cs.CanonicalSet, x: Ordinal) -> Fraction:
    if not cs.member(s, x):
        raise NotInSet(f"{x} not in the restriction set")
    vals = active_values(f, s, x)
    return max(vals) - min(vals)


def osc_filter(f: SimpleFn, s: cs.CanonicalSet, delta: Fraction) -> cs.CanonicalSet:
    """{ x in s : osc_s(f, x) >= delta }, computed symbolically."""
    delta = Q(delta)
    if delta <= 0:
        raise BadParams("oscillation threshold must be positive")
    out = cs.empty_set(f.space)
    n = len(f.parts)
    closures = [cs.closure(cs.intersect(p, s)) for p, _ in f.parts]
    for i in range(n):
        for j in range(n):
            if f.parts[i][1] - f.parts[j][1] >= delta and i != j:
                out = cs.union(out, cs.intersect(closures[i], closures[j]))
    return cs.intersect(s, out)


# ---------------------------------------------------------------------------
# StepFn
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StepFn:
    space: cs.SpaceTop
    pieces: Tuple[Tuple[Ordinal, Ordinal, Fraction], ...]  # (lo, hi, value)

    def __post_init__(self) -> None:
        prev_hi: Optional[Ordinal] = None
        for lo, hi, _ in self.pieces:
            if not (lo.is_zero() or lo.is_successor()):
                raise NotClopen(f"piece left endpoint {lo} is a limit ordinal")
            if cmp(lo, hi) > 0:
                raise FnError("piece interval empty")
            if prev_hi is None:
                if not lo.is_zero():
                    raise PartitionGap("pieces must start at 0")
            elif cmp(lo, succ(prev_hi)) != 0:
                raise PartitionGap("pieces must tile the space")
            prev_hi = hi
        if prev_hi is None or cmp(prev_hi, self.space.top) != 0:
            raise PartitionGap("pieces must end at the top")

    def eval(self, x: Ordinal) -> Fraction:
        if x not in self.space:
            raise cs.OutOfSpace(f"{x} beyond {self.space.top}")
        for lo, hi, v in self.pieces:
            if cmp(lo, x) <= 0 and cmp(x, hi) <= 0:
                return v
        raise PartitionGap(f"no piece contains {x}")

    def as_simple(self) -> SimpleFn:
        parts = [
            (cs.CanonicalSet(self.space, (cs.Cell(lo, hi),)), v)
            for lo, hi, v in self.pieces
        ]
        return make_simple(self.space, parts, validate=False)


def step_const(space: cs.SpaceTop, v: Fraction) -> StepFn:
    return StepFn(space, ((ZERO, space.top, Q(v)),))


# ---------------------------------------------------------------------------
# combinators
# ---------------------------------------------------------------------------


def scale(c: Fraction, f: SimpleFn) -> SimpleFn:
    c = Q(c)
    return SimpleFn(
        f.space,
        tuple((s, c * v) for s, v in f.parts),
        label=f"scale({c}, {f.label})" if f.label else "",
        blocks=f.blocks,
    )


def _translate_set(s: cs.CanonicalSet, offset: Ordinal, space: cs.SpaceTop) -> cs.CanonicalSet:
    """Image of s under y -> offset + y.  Exact for rank cells because
    rank(offset + y) = rank(y) for y > 0 and offset is 0 or a successor."""
    cells = [
        cs.Cell(add(offset, c.lo), add(offset, c.hi), c.rlo, c.rhi, c.parity)
        for c in s.cells
    ]
    return cs.make_set(space, cells)


def patch(
    space: cs.SpaceTop,
    branches: Sequence[Tuple[Ordinal, Ordinal, SimpleFn]],
    label: str = "",
) -> SimpleFn:
    """Assemble disjoint clopen blocks [a, b] carrying translated copies of
    the given functions; uncovered regions get value 0.

    Branch (a, b, g) contributes value g(x - a); g's own space must be
    exactly [0, b - a]."""
    marked = cs.empty_set(space)
    parts: List[Tuple[cs.CanonicalSet, Fraction]] = []
    blocks: List[Tuple[Ordinal, Ordinal]] = []
    for a, b, g in branches:
        if not (a.is_zero() or a.is_successor()):
            raise NotClopen(f"block start {a} is a limit ordinal")
        if b not in space:
            raise cs.OutOfSpace(f"block end {b} beyond {space.top}")
        width = sub(b, a)
        if cmp(g.space.top, width) != 0:
            raise BadParams(f"branch function lives on [0, {g.space.top}], block width is {width}")
        region = cs.CanonicalSet(space, (cs.Cell(a, b),))
        if not cs.is_empty(cs.intersect(marked, region)):
            raise OverlappingSupports(f"block [{a}, {b}] overlaps a previous block")
        marked = cs.union(marked, region)
        blocks.append((a, b))
        for s, v in g.parts:
            parts.append((_translate_set(s, a, space), v))
    rest = cs.complement(marked)
    if not cs.is_empty(rest):
        parts.append((rest, Q(0)))
    return make_simple(space, parts, label=label, blocks=tuple(blocks), validate=False)


def restrict_extend(f: SimpleFn, a: Ordinal, b: Ordinal) -> SimpleFn:
    """Keep f on [a, b] (which must be clopen), 0 elsewhere."""
    if not (a.is_zero() or a.is_successor()):
        raise NotClopen(f"{a} is a limit ordinal")
    region = cs.CanonicalSet(f.space, (cs.Cell(a, b),))
    parts = []
    zero_acc = cs.complement(region)
    for s, v in f.parts:
        inside = cs.intersect(s, region)
        if v == 0:
            zero_acc = cs.union(zero_acc, inside)
        elif not cs.is_empty(inside):
            parts.append((inside, v))
    if not cs.is_empty(zero_acc):
        parts.append((zero_acc, Q(0)))
    return make_simple(f.space, parts, validate=False)


# ---------------------------------------------------------------------------
# gallery
# ---------------------------------------------------------------------------


def layer_indicator(top: Ordinal, parity: str = "even", label: str = "") -> SimpleFn:
    """Indicator of the union of even-subscript (or odd-subscript) isolation
    layers of [0, top]: value 1 exactly on points whose layer parity matches."""
    if parity not in ("even", "odd"):
        raise BadParams(f"parity must be even or odd, got {parity!r}")
    other = "odd" if parity == "even" else "even"
    space = cs.SpaceTop(top)
    ones = cs.make_set(space, [cs.Cell(ZERO, top, parity=parity)])
    zeros = cs.make_set(space, [cs.Cell(ZERO, top, parity=other)])
    return make_simple(
        space,
        [(ones, Q(1)), (zeros, Q(0))],
        label=label or f"fdelta({top}; parity={parity})",
        validate=False,
    )


def type0(n: int, parity: str = "even") -> SimpleFn:
    if n < 1:
        raise BadParams("type0 needs n >= 1")
    f = layer_indicator(omega_pow(nat(n)), parity=parity)
    g = scale(Q(1, n), f)
    return SimpleFn(g.space, g.parts, label=f"type0({n})", blocks=g.blocks)


def block_sum(N: int, parity: str = "even") -> SimpleFn:
    """Blocks n = 1..N carrying (1/n) * layer indicator of [0, w^(n^2)],
    laid out consecutively inside [0, w^w], value 0 beyond and at the top."""
    if N < 1:
        raise BadParams("block_sum needs N >= 1")
    top = omega_pow(OMEGA)
    space = cs.SpaceTop(top)
    branches = []
    offset = ZERO
    for n in range(1, N + 1):
        a = succ(offset)
        width = omega_pow(nat(n * n))
        b = add(a, width)
        g = scale(Q(1, n), layer_indicator(width, parity=parity))
        branches.append((a, b, g))
        offset = b
    f = patch(space, branches, label=f"block_sum({N}; parity={parity})")
    return f


GALLERY = ("f_delta", "type0", "prop53a", "prop53b", "prop53c", "prop53d")


def gallery(name: str, *args, parity: str = "even") -> SimpleFn:
    try:
        if name in ("f_delta", "fdelta"):
            (top,) = args
            return layer_indicator(top, parity=parity)
        if name == "type0":
            (n,) = args
            return type0(int(n), parity=parity)
        if name == "prop53b":
            (N,) = args
            return block_sum(int(N), parity=parity)
        if name == "prop53c":
            if args:
                raise BadParams("prop53c takes no parameters")
            f = layer_indicator(omega_pow(OMEGA), parity=parity)
            return SimpleFn(f.space, f.parts, label="prop53c")
        if name == "prop53d":
            if args:
                raise BadParams("prop53d takes no parameters")
            f = layer_indicator(OMEGA, parity=parity)
            return SimpleFn(f.space, f.parts, label="prop53d")
        if name == "prop53a":
            (N,) = args
            from .structure import prop53a_assembly

            return prop53a_assembly(int(N), parity=parity)
    except ValueError as e:
        raise BadParams(str(e)) from e
    raise UnknownGallery(f"no gallery entry named {name!r}")


def value_gaps(f: SimpleFn) -> List[Fraction]:
    """All positive pairwise differences of attained values."""
    vals = f.values()
    gaps = sorted({a - b for a in vals for b in vals if a > b})
    return gaps
