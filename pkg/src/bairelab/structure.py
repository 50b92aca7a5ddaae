"""Recursive presentations of the type-n spaces and functions.

A structural function is a tree of nodes: leaves carry values, sums
concatenate clopen pieces, and limit nodes adjoin an infinite tail of
copies of a template clustering at a single limit point (the one-point
compactification of the disjoint union).  Tails are never materialized:
a tail rule holds the template once plus a scaling law — constant, or
reciprocal-affine where copy i is multiplied by p/(q*i + r).

The type-(n+1) construction adjoins to each isolated point of a type-0
base a tail of type-n blocks whose scale decays with both the point's
index i and the tail index j.  The index i is threaded through shared
templates as an inherited offset: descending into tail copy a of an
offset-carrying rule adds a-1 to the offset, and reciprocal rules marked
`inherit` add the accumulated offset to their r parameter.  Entering an
adjoined block resets the offset, since blocks are self-contained.

Offsets make the copies of a shared template genuinely different, so
every traversal below carries the pair (node, offset); `offset=None`
plays the role of the limit offset at infinity, where every reciprocal
factor has decayed to zero — tail analyses stabilize there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple, Union

from . import cells as cs
from . import functions as fn
from .ordinals import ZERO, Ordinal, add, cmp, nat, omega_pow, sub, succ


class StructError(Exception):
    pass


class BadParams(StructError):
    pass


class BadAddress(StructError):
    pass


class InfiniteRange(StructError):
    pass


class BudgetExceeded(StructError):
    pass


# ---------------------------------------------------------------------------
# nodes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scaling:
    kind: str  # 'constant' | 'reciprocal_affine'
    p: int = 1
    q: int = 1
    r: int = 1
    inherit: bool = False

    def __post_init__(self) -> None:
        if self.kind not in ("constant", "reciprocal_affine"):
            raise BadParams(f"unknown scaling {self.kind!r}")
        if self.kind == "reciprocal_affine" and min(self.p, self.q, self.r) < 1:
            raise BadParams("reciprocal_affine needs positive p, q, r")


CONSTANT = Scaling("constant")


def reciprocal(p: int, q: int, r: int, inherit: bool = False) -> Scaling:
    return Scaling("reciprocal_affine", p, q, r, inherit)


@dataclass(frozen=True)
class Leaf:
    value: Q


@dataclass(frozen=True)
class TailRule:
    template: "Node"
    scaling: Scaling = CONSTANT
    reset: bool = False  # children restart the inherited offset


@dataclass(frozen=True)
class Sum:
    children: Tuple["Node", ...]


@dataclass(frozen=True)
class Limit:
    prefix: Tuple["Node", ...]
    tail: TailRule
    limit_value: Q


Node = Union[Leaf, Sum, Limit]


@dataclass(frozen=True)
class StructFn:
    root: Node
    label: str = ""

    def __str__(self) -> str:
        return self.label or "struct-fn"


def factor(s: Scaling, a: int, offset: Optional[int]) -> Q:
    if s.kind == "constant":
        return Q(1)
    if offset is None and s.inherit:
        return Q(0)
    r = s.r + (offset if s.inherit and offset is not None else 0)
    return Q(s.p, s.q * a + r)


def child_offset(rule: TailRule, a: int, offset: Optional[int]) -> Optional[int]:
    if rule.reset:
        return 0
    return None if offset is None else offset + (a - 1)


def has_inherit(node: Node) -> bool:
    if isinstance(node, Leaf):
        return False
    if isinstance(node, Sum):
        return any(has_inherit(c) for c in node.children)
    return (
        node.tail.scaling.inherit
        or node.tail.scaling.kind == "reciprocal_affine"
        or has_inherit(node.tail.template)
    )


def node_rank(node: Node) -> int:
    """Cantor-Bendixson rank of the subspace (rank of its deepest point)."""
    if isinstance(node, Leaf):
        return 0
    if isinstance(node, Sum):
        return max(node_rank(c) for c in node.children)
    pre = max((node_rank(c) for c in node.prefix), default=0)
    return max(pre, node_rank(node.tail.template) + 1)


def sup_value(node: Node, offset: Optional[int] = 0) -> Q:
    """Closed-form value supremum; decaying scalings peak at copy 1."""
    if isinstance(node, Leaf):
        return abs(node.value)
    if isinstance(node, Sum):
        return max(sup_value(c, offset) for c in node.children)
    best = abs(node.limit_value)
    for c in node.prefix:
        best = max(best, sup_value(c, offset))
    f1 = factor(node.tail.scaling, 1, offset)
    if f1 > 0:
        best = max(best, f1 * sup_value(node.tail.template, child_offset(node.tail, 1, offset)))
    return best


# ---------------------------------------------------------------------------
# type-n builders
# ---------------------------------------------------------------------------


def _layer_value(r: int, k: int, parity: str) -> Q:
    # rank-r layer has subscript 1 + r; finite subscripts are even iff r is odd
    even = r % 2 == 1
    hit = even if parity == "even" else not even
    return Q(1, k) if hit else Q(0)


def build_type0(k: int, parity: str = "even") -> Node:
    if k < 1:
        raise BadParams("base depth must be positive")
    node: Node = Leaf(_layer_value(0, k, parity))
    for r in range(1, k + 1):
        node = Limit((), TailRule(node, CONSTANT), _layer_value(r, k, parity))
    return node


def _adjoin(node: Node, template: Node, m: int) -> Node:
    """Hang a decaying tail of template blocks on every isolated point."""
    if isinstance(node, Leaf):
        return Limit(
            (),
            TailRule(template, reciprocal(1, 1, m + 1, inherit=True), reset=True),
            node.value,
        )
    if isinstance(node, Sum):
        return Sum(tuple(_adjoin(c, template, m) for c in node.children))
    return Limit(
        tuple(_adjoin(c, template, m) for c in node.prefix),
        TailRule(_adjoin(node.tail.template, template, m), node.tail.scaling,
                 node.tail.reset),
        node.limit_value,
    )


def build_type(n: int, m: int, base_depth: int, parity: str = "even") -> StructFn:
    """The type-n function over the type-0 base of the given depth; each
    recursion stage adjoins scaled copies of the previous stage to the
    isolated points of a fresh type-0 base."""
    if n < 0 or n > 4:
        raise BadParams("type level must be between 0 and 4")
    if m < 1 or base_depth < 1:
        raise BadParams("m and base_depth must be positive")
    node = build_type0(base_depth, parity)
    for _ in range(n):
        node = _adjoin(build_type0(base_depth, parity), node, m)
    return StructFn(node, label=f"type(n={n}, m={m}, k={base_depth})")


# ---------------------------------------------------------------------------
# addresses
# ---------------------------------------------------------------------------


def struct_eval(F: StructFn, address: Sequence[int]) -> Q:
    """Value at the addressed point: child index c at a Sum picks a child;
    at a Limit, indices 1..len(prefix) pick prefix children and larger
    indices pick tail copies; an empty address names the limit point."""
    node, offset, scale = F.root, 0, Q(1)
    for depth, c in enumerate(address):
        if isinstance(node, Leaf):
            raise BadAddress(f"address descends below a leaf at step {depth}")
        if c < 1:
            raise BadAddress(f"child index {c} at step {depth}")
        if isinstance(node, Sum):
            if c > len(node.children):
                raise BadAddress(f"sum has {len(node.children)} children, got {c}")
            node = node.children[c - 1]
            continue
        if c <= len(node.prefix):
            node = node.prefix[c - 1]
            continue
        a = c - len(node.prefix)
        scale *= factor(node.tail.scaling, a, offset)
        offset = child_offset(node.tail, a, offset)
        node = node.tail.template
    if isinstance(node, Sum):
        raise BadAddress("address ends at a sum, which has no distinguished point")
    v = node.value if isinstance(node, Leaf) else node.limit_value
    return v * scale


def parse_address(text: str) -> Tuple[int, ...]:
    text = text.strip()
    if text in ("", "/"):
        return ()
    if not text.startswith("/"):
        raise BadAddress(f"addresses look like /i/j/..., got {text!r}")
    try:
        return tuple(int(part) for part in text.strip("/").split("/"))
    except ValueError as e:
        raise BadAddress(str(e)) from None


def format_address(address: Sequence[int]) -> str:
    return "/" + "/".join(str(c) for c in address) if address else "/"


# ---------------------------------------------------------------------------
# truncation: keep adjoined blocks with i + j <= level, zero the rest
# ---------------------------------------------------------------------------


def _zero_node(node: Node) -> Node:
    if isinstance(node, Leaf):
        return Leaf(Q(0))
    if isinstance(node, Sum):
        return Sum(tuple(_zero_node(c) for c in node.children))
    return Limit(
        tuple(_zero_node(c) for c in node.prefix),
        TailRule(_zero_node(node.tail.template), CONSTANT),
        Q(0),
    )


def _scale_node(node: Node, c: Q) -> Node:
    if isinstance(node, Leaf):
        return Leaf(node.value * c)
    if isinstance(node, Sum):
        return Sum(tuple(_scale_node(ch, c) for ch in node.children))
    return Limit(
        tuple(_scale_node(ch, c) for ch in node.prefix),
        TailRule(_scale_node(node.tail.template, c), node.tail.scaling,
                 node.tail.reset),
        node.limit_value * c,
    )


def _truncate(node: Node, level: int, offset: int) -> Node:
    if isinstance(node, Leaf):
        return node
    if isinstance(node, Sum):
        return Sum(tuple(_truncate(c, level, offset) for c in node.children))
    rule = node.tail
    if rule.scaling.kind == "reciprocal_affine":
        # adjoined blocks: the leaf label is i = 1 + offset; keep copies
        # with i + j <= level, fully truncated and explicitly scaled
        i = 1 + (offset if rule.scaling.inherit else 0)
        keep = max(0, level - i)
        prefix = list(node.prefix)
        for j in range(1, keep + 1):
            body = _truncate(rule.template, level, 0 if rule.reset else offset)
            prefix.append(_scale_node(body, factor(rule.scaling, j, offset)))
        return Limit(
            tuple(prefix),
            TailRule(_zero_node(rule.template), CONSTANT),
            node.limit_value,
        )
    # constant tail: copies differ only through the inherited offset and
    # stabilize once the offset alone exceeds the level
    prefix = [_truncate(c, level, offset) for c in node.prefix]
    if has_inherit(rule.template):
        stable = max(0, level - offset)
        for a in range(1, stable + 1):
            prefix.append(_truncate(rule.template, level, offset + a - 1))
        tail_body = _truncate(rule.template, level, level)
        return Limit(tuple(prefix), TailRule(tail_body, CONSTANT), node.limit_value)
    return Limit(
        tuple(prefix),
        TailRule(_truncate(rule.template, level, offset), CONSTANT),
        node.limit_value,
    )


def truncate(F: StructFn, level: int) -> StructFn:
    """Zero every adjoined block with i + j > level, keeping the space.
    This is the uniform-convergence stage of the schema: the error is at
    most the scale of the first dropped block."""
    if level < 1:
        raise BadParams("level must be positive")
    return StructFn(_truncate(F.root, level, 0), label=f"{F.label}|trunc{level}")


def truncation_error(F: StructFn, level: int) -> Q:
    """Closed-form sup of |F - truncate(F, level)|."""

    def err(node: Node, offset: int) -> Q:
        if isinstance(node, Leaf):
            return Q(0)
        if isinstance(node, Sum):
            return max(err(c, offset) for c in node.children)
        rule = node.tail
        best = max((err(c, offset) for c in node.prefix), default=Q(0))
        if rule.scaling.kind == "reciprocal_affine":
            i = 1 + (offset if rule.scaling.inherit else 0)
            keep = max(0, level - i)
            j0 = keep + 1  # first dropped copy carries the largest lost value
            best = max(best, factor(rule.scaling, j0, offset) * sup_value(rule.template, 0))
            for j in range(1, keep + 1):
                best = max(
                    best,
                    factor(rule.scaling, j, offset)
                    * err(rule.template, 0 if rule.reset else offset),
                )
            return best
        if has_inherit(rule.template):
            for a in range(1, max(0, level - offset) + 2):
                best = max(best, err(rule.template, offset + a - 1))
            return best
        return max(best, err(rule.template, offset))

    return err(F.root, 0)


# ---------------------------------------------------------------------------
# flattening to the interval model
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Piece:
    lo: Ordinal
    hi: Ordinal
    table: Tuple[Tuple[int, Q], ...]  # rank -> value, covering all ranks


def _span_after(lo: Ordinal, olen: Ordinal) -> Ordinal:
    return add(lo, olen)


def _flatten(node: Node, lo: Ordinal) -> Tuple[Ordinal, List[_Piece]]:
    """Returns (length-1 of the interval, rank-table pieces tiling it)."""
    if isinstance(node, Leaf):
        return ZERO, [_Piece(lo, lo, ((0, node.value),))]
    if isinstance(node, Sum):
        pieces: List[_Piece] = []
        cur = lo
        for c in node.children:
            l, ps = _flatten(c, cur)
            pieces.extend(ps)
            cur = add(cur, succ(l))
        return sub(pieces[-1].hi, lo), pieces
    if node.tail.scaling.kind != "constant" or has_inherit(node.tail.template):
        raise InfiniteRange(
            "cannot flatten an untruncated decaying tail (infinitely many values)"
        )
    pieces = []
    cur = lo
    for c in node.prefix:
        l, ps = _flatten(c, cur)
        pieces.extend(ps)
        cur = add(cur, succ(l))
    tlen, tpieces = _flatten(node.tail.template, cur)
    if len(tpieces) != 1:
        raise InfiniteRange(
            "constant tail over a non-homogeneous template has no cell layout"
        )
    ttable = dict(tpieces[0].table)
    lim_rank = node_rank(node.tail.template) + 1
    # order type of the tail: omega copies of (tlen + 1), closed off by the
    # limit point, i.e. w^(lead exponent of tlen + 1)
    lead = tlen.terms[0][0] if tlen.terms else ZERO
    span = omega_pow(succ(lead))
    hi = add(cur, span)
    ttable[lim_rank] = node.limit_value
    pieces.append(_Piece(cur, hi, tuple(sorted(ttable.items()))))
    return sub(hi, lo), pieces


def flatten(F: StructFn) -> Tuple[cs.SpaceTop, fn.SimpleFn]:
    """Order-isomorphic interval realization; requires finite range (no
    live decaying tails — truncate first)."""
    olen, pieces = _flatten(F.root, ZERO)
    space = cs.SpaceTop(olen)
    by_value: Dict[Q, List[cs.Cell]] = {}
    for p in pieces:
        for r, v in p.table:
            by_value.setdefault(v, []).append(
                cs.rank_eq(p.lo, p.hi, nat(r))
            )
    parts = [
        (cs.make_set(space, cells), v) for v, cells in sorted(by_value.items())
    ]
    blocks = tuple((p.lo, p.hi) for p in pieces)
    out = fn.make_simple(space, parts, label=f"flat({F.label})",
                         blocks=blocks if len(blocks) > 1 else None,
                         validate=False)
    return space, out


# ---------------------------------------------------------------------------
# structural subsets and the oscillation iteration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SLeaf:
    present: bool


@dataclass(frozen=True)
class SSum:
    children: Tuple["SSet", ...]


@dataclass(frozen=True)
class SLimit:
    prefix: Tuple["SSet", ...]
    shared: "SSet"  # subset of every tail copy beyond the exceptions
    exceptions: Tuple[Tuple[int, "SSet"], ...]  # (copy index, subset)
    limit_in: bool


SSet = Union[SLeaf, SSum, SLimit]

_STABILIZE_CAP = 200


def full_sset(node: Node) -> SSet:
    if isinstance(node, Leaf):
        return SLeaf(True)
    if isinstance(node, Sum):
        return SSum(tuple(full_sset(c) for c in node.children))
    return SLimit(
        tuple(full_sset(c) for c in node.prefix),
        full_sset(node.tail.template),
        (),
        True,
    )


def sset_empty(s: SSet) -> bool:
    if isinstance(s, SLeaf):
        return not s.present
    if isinstance(s, SSum):
        return all(sset_empty(c) for c in s.children)
    return (
        not s.limit_in
        and all(sset_empty(c) for c in s.prefix)
        and sset_empty(s.shared)
        and all(sset_empty(c) for _, c in s.exceptions)
    )


def _copy_sset(s: SLimit, a: int) -> SSet:
    for idx, e in s.exceptions:
        if idx == a:
            return e
    return s.shared


def achieved_values(node: Node, s: SSet, offset: Optional[int], scale: Q) -> set:
    """Values attained on the subset (finite: decaying tails contribute
    through their stable limit, where the factors are zero)."""
    if isinstance(node, Leaf):
        return {node.value * scale} if s.present else set()
    if isinstance(node, Sum):
        out = set()
        for c, sc in zip(node.children, s.children):
            out |= achieved_values(c, sc, offset, scale)
        return out
    out = set()
    if s.limit_in:
        out.add(node.limit_value * scale)
    for c, sc in zip(node.prefix, s.prefix):
        out |= achieved_values(c, sc, offset, scale)
    rule = node.tail
    for a, e in s.exceptions:
        out |= achieved_values(
            rule.template, e, child_offset(rule, a, offset),
            scale * factor(rule.scaling, a, offset),
        )
    if not sset_empty(s.shared):
        if rule.scaling.kind == "constant" and not has_inherit(rule.template):
            out |= achieved_values(rule.template, s.shared, offset, scale)
        else:
            # infinitely many decaying copies: only the limit values remain,
            # i.e. the template values at offset infinity
            out |= achieved_values(rule.template, s.shared, None,
                                   scale * (Q(1) if rule.scaling.kind == "constant" else Q(0)))
    return out


def _cluster_values(node: Limit, s: SLimit, offset: Optional[int], scale: Q) -> set:
    """Values accumulating at the limit point from infinitely many copies."""
    if sset_empty(s.shared):
        return set()
    rule = node.tail
    if rule.scaling.kind == "constant" and not has_inherit(rule.template):
        return achieved_values(rule.template, s.shared, offset, scale)
    if rule.scaling.kind == "constant":
        return achieved_values(rule.template, s.shared, None, scale)
    return {Q(0)}


def osc_filter_struct(
    node: Node, s: SSet, thresh: Q, offset: Optional[int], scale: Q
) -> SSet:
    """Keep the points whose oscillation over the subset is >= thresh.
    Only limit points can oscillate; a decaying tail is examined copy by
    copy until the filtered copies agree with the offset-infinity result."""
    if isinstance(s, SLeaf):
        return SLeaf(False)
    if isinstance(s, SSum):
        return SSum(tuple(
            osc_filter_struct(c, sc, thresh, offset, scale)
            for c, sc in zip(node.children, s.children)
        ))
    assert isinstance(node, Limit)
    rule = node.tail
    new_prefix = tuple(
        osc_filter_struct(c, sc, thresh, offset, scale)
        for c, sc in zip(node.prefix, s.prefix)
    )
    keep_limit = False
    if s.limit_in:
        active = _cluster_values(node, s, offset, scale)
        if active:
            active.add(node.limit_value * scale)
            keep_limit = max(active) - min(active) >= thresh
    uniform = rule.scaling.kind == "constant" and not has_inherit(rule.template)
    if uniform:
        new_shared = osc_filter_struct(rule.template, s.shared, thresh, offset, scale)
        new_exc = tuple(
            (a, osc_filter_struct(rule.template, e, thresh, offset, scale))
            for a, e in s.exceptions
        )
    else:
        stable_scale = scale if rule.scaling.kind == "constant" else Q(0)
        stable = osc_filter_struct(rule.template, s.shared, thresh, None, stable_scale)
        exc: List[Tuple[int, SSet]] = []
        max_known = max((a for a, _ in s.exceptions), default=0)
        a = 1
        while True:
            cur = _copy_sset(s, a)
            res = osc_filter_struct(
                rule.template, cur, thresh,
                child_offset(rule, a, offset),
                scale * factor(rule.scaling, a, offset),
            )
            if a > max_known and cur == s.shared and res == stable:
                break
            if res != stable:
                exc.append((a, res))
            a += 1
            if a > _STABILIZE_CAP:
                raise BudgetExceeded(
                    f"tail filtering did not stabilize within {_STABILIZE_CAP} copies"
                )
        new_shared = stable
        new_exc = tuple(exc)
    return SLimit(new_prefix, new_shared, new_exc, keep_limit)


@dataclass(frozen=True)
class StructTrace:
    kind: str
    deltas: Tuple[Q, ...]
    stages: Tuple[SSet, ...]
    terminal: Tuple[str, int]  # ('empty_at' | 'exhausted', stage index)


def struct_index(F: StructFn, kind: str, deltas, max_steps: int = 64) -> StructTrace:
    """Oscillation-filter iteration on the structural presentation.

    kind 'beta' repeats a single threshold; kind 'gen' consumes the
    given thresholds in order and reports 'exhausted' if the set is
    still nonempty when they run out."""
    if kind == "beta":
        seq = None
        delta = Q(deltas)
        if delta <= 0:
            raise BadParams("threshold must be positive")
        all_deltas: Tuple[Q, ...] = (delta,)
    elif kind == "gen":
        seq = [Q(d) for d in deltas]
        if not seq or any(d <= 0 for d in seq):
            raise BadParams("thresholds must be positive")
        all_deltas = tuple(seq)
    else:
        raise BadParams(f"kind must be beta or gen, got {kind!r}")
    cur = full_sset(F.root)
    stages = [cur]
    step = 0
    while not sset_empty(cur):
        if seq is not None and step >= len(seq):
            return StructTrace(kind, all_deltas, tuple(stages), ("exhausted", step))
        if step >= max_steps:
            raise BudgetExceeded(f"no termination within {max_steps} steps")
        d = all_deltas[0] if seq is None else seq[step]
        cur = osc_filter_struct(F.root, cur, d, 0, Q(1))
        stages.append(cur)
        step += 1
    return StructTrace(kind, all_deltas, tuple(stages), ("empty_at", step))


def sset_to_cells(node: Node, s: SSet, lo: Ordinal) -> Tuple[Ordinal, List[cs.Cell]]:
    """Interval-model image of a structural subset under the flatten
    correspondence (same layout restrictions as flatten)."""
    if isinstance(node, Leaf):
        return ZERO, ([cs.Cell(lo, lo)] if s.present else [])
    if isinstance(node, Sum):
        cur = lo
        out: List[cs.Cell] = []
        last_hi = lo
        for c, sc in zip(node.children, s.children):
            l, cells = sset_to_cells(c, sc, cur)
            out.extend(cells)
            last_hi = add(cur, l)
            cur = add(cur, succ(l))
        return sub(last_hi, lo), out
    if node.tail.scaling.kind != "constant" or has_inherit(node.tail.template):
        raise InfiniteRange("subset layout needs a constant, offset-free tail")
    cur = lo
    out = []
    for c, sc in zip(node.prefix, s.prefix):
        l, cells = sset_to_cells(c, sc, cur)
        out.extend(cells)
        cur = add(cur, succ(l))
    tlen = _node_len(node.tail.template)
    lead = tlen.terms[0][0] if tlen.terms else ZERO
    span = omega_pow(succ(lead))
    copy_lo = cur
    hi = add(cur, span)
    lim_rank = nat(node_rank(node.tail.template) + 1)
    if not sset_empty(s.shared):
        # The shared subset repeats across all but finitely many copies;
        # its cells must describe pure rank layers of the whole template
        # interval — only those lift to the full tail span.
        _, shared_cells = sset_to_cells(node.tail.template, s.shared, copy_lo)
        tlo, thi = copy_lo, add(copy_lo, tlen)
        span_space = cs.SpaceTop(hi)
        lifted: List[cs.Cell] = []
        for c in shared_cells:
            cand = cs.Cell(tlo, thi, c.rlo, c.rhi, c.parity)
            same = cs.sets_equal(
                cs.make_set(span_space, [c]), cs.make_set(span_space, [cand])
            )
            if not same:
                raise InfiniteRange("shared subset is not rank-homogeneous")
            rhi = cand.rhi
            if rhi is None or cmp(rhi, lim_rank) > 0:
                rhi = lim_rank  # the lifted cell must not swallow the limit point
            lifted.append(cs.Cell(copy_lo, hi, cand.rlo, rhi, cand.parity))
        if s.exceptions:
            region = cs.make_set(span_space, lifted)
            for a, e in s.exceptions:
                base = copy_lo
                for _ in range(a - 1):
                    base = add(base, succ(tlen))
                region = cs.diff(region, cs.make_set(span_space, [cs.Cell(base, add(base, tlen))]))
                _, cells = sset_to_cells(node.tail.template, e, base)
                region = cs.union(region, cs.make_set(span_space, cells))
            out.extend(region.cells)
        else:
            out.extend(lifted)
    else:
        for a, e in s.exceptions:
            base = copy_lo
            for _ in range(a - 1):
                base = add(base, succ(tlen))
            _, cells = sset_to_cells(node.tail.template, e, base)
            out.extend(cells)
    if s.limit_in:
        out.append(cs.rank_eq(hi, hi, lim_rank))
    return sub(hi, lo), out


def _node_len(node: Node) -> Ordinal:
    l, _ = _flatten(node, ZERO)
    return l


def sset_to_set(F: StructFn, s: SSet) -> cs.CanonicalSet:
    olen, cells = sset_to_cells(F.root, s, ZERO)
    return cs.make_set(cs.SpaceTop(olen), cells)


# ---------------------------------------------------------------------------
# chain search on the structural model (desk scale)
# ---------------------------------------------------------------------------


def struct_chain_bound(F: StructFn, depth: int = 6) -> Q:
    """Best generalized chain sum found over achieved-value gaps; a
    finite search certifying consistency with the quarter-norm bound."""
    vals = sorted(achieved_values(F.root, full_sset(F.root), 0, Q(1)))
    gaps = sorted(
        {b - a for a, b in itertools.combinations(vals, 2) if b > a},
        reverse=True,
    )

    def best(s: SSet, left: int) -> Q:
        if left == 0 or sset_empty(s):
            return Q(0)
        out = Q(0)
        for d in gaps:
            nxt = osc_filter_struct(F.root, s, d, 0, Q(1))
            if sset_empty(nxt):
                continue
            out = max(out, d + best(nxt, left - 1))
        return out

    return best(full_sset(F.root), depth)


# ---------------------------------------------------------------------------
# the finite-stage assembly on [0, w^(w^2)]
# ---------------------------------------------------------------------------


def prop53a_assembly(N: int, parity: str = "even") -> fn.SimpleFn:
    """Clopen blocks of truncated type-n functions (n <= N) with decaying
    sup norms, summed inside [0, w^(w^2)] with value 0 elsewhere."""
    if N < 1:
        raise BadParams("depth budget must be positive")
    top = omega_pow(omega_pow(nat(2)))
    branches = []
    offset = ZERO
    blocks: List[Tuple[Ordinal, Ordinal]] = []
    for n in range(0, N + 1):
        # level-2 truncation: one adjoined block per site, error <= 1/(n+3);
        # the base depth n+2 makes the block sup norms 1/(n+2) -> 0
        T = truncate(build_type(n, 1, n + 2, parity), 2)
        _, g = flatten(T)
        a = succ(offset)
        b = add(a, g.space.top)
        branches.append((a, b, g))
        if g.blocks:
            blocks.extend((add(a, lo), add(a, hi)) for lo, hi in g.blocks)
        else:
            blocks.append((a, b))
        offset = b
    out = fn.patch(cs.SpaceTop(top), branches, label=f"prop53a(N={N})")
    return fn.SimpleFn(out.space, out.parts, label=out.label, blocks=tuple(blocks))
