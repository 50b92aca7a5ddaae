"""Exact set algebra and topology for rank-definable subsets of [0, top].

A Cell denotes { x in [lo, hi] : rlo <= rank(x) < rhi, parity(rank(x)) matches }
where rank is the Cantor-Bendixson rank of the point inside any ambient
interval and parity refers to the layer-subscript parity of the point.
rhi = None means unbounded.  A CanonicalSet is a finite union of cells.

Intervals are stored closed: in ordinal spaces (a, b] = [a+1, b], and
[0, x) for limit x decomposes into closed-interval cells with a rank
ceiling, so closed intervals lose no generality.

The half-open rank window [rlo, rhi) is deliberately more general than
the two surface forms (rank >= r, rank = r): it is the smallest family
closed under complement, which the index iteration needs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from .ordinals import (
    ZERO,
    ONE,
    OMEGA,
    Ordinal,
    add,
    cmp,
    fundamental_seq,
    nat,
    omega_pow,
    omega_pow_times,
    parity_of_rank,
    pred,
    rank,
    split_by_rank,
    sub,
    succ,
)


class SetError(Exception):
    pass


class OutOfSpace(SetError):
    pass


class SpaceMismatch(SetError):
    pass


@dataclass(frozen=True)
class SpaceTop:
    top: Ordinal

    def __contains__(self, x: Ordinal) -> bool:
        return cmp(x, self.top) <= 0

    def __str__(self) -> str:
        return f"[0, {self.top}]"


@dataclass(frozen=True)
class Cell:
    lo: Ordinal
    hi: Ordinal
    rlo: Ordinal = ZERO
    rhi: Optional[Ordinal] = None  # exclusive; None = unbounded
    parity: str = "any"  # 'any' | 'even' | 'odd'

    def __post_init__(self) -> None:
        if cmp(self.lo, self.hi) > 0:
            raise SetError(f"cell interval empty: [{self.lo}, {self.hi}]")
        if self.parity not in ("any", "even", "odd"):
            raise SetError(f"bad parity {self.parity!r}")

    def __str__(self) -> str:
        bits = [f"[{self.lo}, {self.hi}]"]
        if self.rhi is None:
            bits.append(f"rank>={self.rlo}")
        else:
            bits.append(f"rank in [{self.rlo}, {self.rhi})")
        if self.parity != "any":
            bits.append(f"parity={self.parity}")
        return "cell(" + "; ".join(bits) + ")"


def cell_eq(a: Cell, b: Cell) -> bool:
    return (
        cmp(a.lo, b.lo) == 0
        and cmp(a.hi, b.hi) == 0
        and cmp(a.rlo, b.rlo) == 0
        and ((a.rhi is None) == (b.rhi is None))
        and (a.rhi is None or cmp(a.rhi, b.rhi) == 0)
        and a.parity == b.parity
    )


def rank_ge(lo: Ordinal, hi: Ordinal, r: Ordinal, parity: str = "any") -> Cell:
    return Cell(lo, hi, rlo=r, rhi=None, parity=parity)


def rank_eq(lo: Ordinal, hi: Ordinal, r: Ordinal, parity: str = "any") -> Cell:
    return Cell(lo, hi, rlo=r, rhi=succ(r), parity=parity)


def _parity_matches(p_cell: str, r: Ordinal) -> bool:
    return p_cell == "any" or parity_of_rank(r) == p_cell


def cell_member(c: Cell, x: Ordinal) -> bool:
    if cmp(x, c.lo) < 0 or cmp(x, c.hi) > 0:
        return False
    r = rank(x)
    if cmp(r, c.rlo) < 0:
        return False
    if c.rhi is not None and cmp(r, c.rhi) >= 0:
        return False
    return _parity_matches(c.parity, r)


# -- quotient bookkeeping ----------------------------------------------------
# Points of rank >= r in [lo, hi] are exactly w^r * q for q >= 1 (or any q
# when r = 0); rank(w^r * q) = r + rank(q).  Cell queries reduce to the
# quotient interval [qlo, qhi].


def _ceil_div(lo: Ordinal, r: Ordinal) -> Ordinal:
    """Least q with w^r * q >= lo."""
    q, rem = split_by_rank(lo, r)
    return q if rem.is_zero() else succ(q)


def _floor_div(hi: Ordinal, r: Ordinal) -> Ordinal:
    """Greatest q with w^r * q <= hi."""
    q, _ = split_by_rank(hi, r)
    return q


def _qbounds(c: Cell) -> Optional[Tuple[Ordinal, Ordinal]]:
    qlo = _ceil_div(c.lo, c.rlo)
    if not c.rlo.is_zero() and qlo.is_zero():
        qlo = ONE
    qhi = _floor_div(c.hi, c.rlo)
    if cmp(qlo, qhi) > 0:
        return None
    return qlo, qhi


def _rank_window(c: Cell) -> Optional[Optional[Ordinal]]:
    """Width of the allowed quotient-rank window, None for unbounded.

    Returns the ordinal delta with allowed quotient ranks [0, delta),
    or raises StopIteration-style None marker when the window is empty."""
    if c.rhi is None:
        return None
    if cmp(c.rhi, c.rlo) <= 0:
        raise SetError("empty rank window")  # callers pre-check
    return sub(c.rhi, c.rlo)


def _q_ok(c: Cell, q: Ordinal, delta: Optional[Ordinal]) -> bool:
    if q.is_zero() and not c.rlo.is_zero():
        return False
    s = rank(q)
    if delta is not None and cmp(s, delta) >= 0:
        return False
    return _parity_matches(c.parity, add(c.rlo, s))


def _next_limit(q: Ordinal) -> Ordinal:
    """Least limit ordinal >= q (least quotient of rank >= 1)."""
    if q.is_zero():
        return OMEGA
    if not rank(q).is_zero():
        return q
    h, rem = split_by_rank(q, ONE)
    return omega_pow_times(ONE, succ(h)) if not rem.is_zero() else q


def cell_min(c: Cell) -> Optional[Ordinal]:
    """Smallest member of the cell, or None when empty."""
    if c.rhi is not None and cmp(c.rhi, c.rlo) <= 0:
        return None
    delta = _rank_window(c)
    qb = _qbounds(c)
    if qb is None:
        return None
    qlo, qhi = qb
    # Candidates: the left endpoint, the first rank-0 quotient above it,
    # the first limit quotient, and the first rank-exactly-1 quotient.
    # Rank-0 and rank-1 quotients realize both layer parities, so the
    # minimum over these candidates is the true minimum.
    m1 = _next_limit(qlo)
    cands = [qlo, succ(qlo), m1, add(m1, OMEGA)]
    best: Optional[Ordinal] = None
    for q in cands:
        if cmp(q, qlo) < 0 or cmp(q, qhi) > 0:
            continue
        if not _q_ok(c, q, delta):
            continue
        if best is None or cmp(q, best) < 0:
            best = q
    if best is None:
        return None
    return omega_pow_times(c.rlo, best)


def q_is_limitish(q: Ordinal) -> bool:
    return q.is_limit()


def cell_derived(c: Cell) -> List[Cell]:
    """Limit points of the cell (as cells; may be nonmembers)."""
    if c.rhi is not None and cmp(c.rhi, c.rlo) <= 0:
        return []
    if cell_min(c) is None:
        return []
    delta = _rank_window(c)
    qb = _qbounds(c)
    if qb is None:
        return []
    qlo, qhi = qb
    if cmp(qlo, qhi) >= 0:
        return []
    # Witness rank t inside the window whose layer parity matches: limit
    # quotients of rank > t accumulate cell members of quotient-rank t.
    if c.parity == "any":
        t = 0
    else:
        t = 0 if parity_of_rank(c.rlo) == c.parity else 1
        if delta is not None and cmp(nat(t), delta) >= 0:
            return []
    lo_x = succ(omega_pow_times(c.rlo, qlo))
    hi_x = omega_pow_times(c.rlo, qhi)
    if cmp(lo_x, hi_x) > 0:
        return []
    thresh = add(c.rlo, nat(t + 1))
    return [Cell(lo_x, hi_x, rlo=thresh, rhi=None, parity="any")]


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalSet:
    space: SpaceTop
    cells: Tuple[Cell, ...] = ()

    def __str__(self) -> str:
        if not self.cells:
            return f"{{}} in {self.space}"
        return " U ".join(str(c) for c in self.cells) + f" in {self.space}"


def empty_set(space: SpaceTop) -> CanonicalSet:
    return CanonicalSet(space, ())


def full_set(space: SpaceTop) -> CanonicalSet:
    return CanonicalSet(space, (Cell(ZERO, space.top),))


def singleton(space: SpaceTop, x: Ordinal) -> CanonicalSet:
    if x not in space:
        raise OutOfSpace(f"{x} beyond {space.top}")
    return CanonicalSet(space, (Cell(x, x),))


def make_set(space: SpaceTop, cells: Sequence[Cell]) -> CanonicalSet:
    for c in cells:
        if c.hi not in space:
            raise OutOfSpace(f"cell {c} beyond {space.top}")
    return normalize(CanonicalSet(space, tuple(cells)))


def member(s: CanonicalSet, x: Ordinal) -> bool:
    if x not in s.space:
        raise OutOfSpace(f"{x} beyond {s.space.top}")
    return any(cell_member(c, x) for c in s.cells)


def min_elem(s: CanonicalSet) -> Optional[Ordinal]:
    best: Optional[Ordinal] = None
    for c in s.cells:
        m = cell_min(c)
        if m is not None and (best is None or cmp(m, best) < 0):
            best = m
    return best


def is_empty(s: CanonicalSet) -> bool:
    return min_elem(s) is None


def _sort_key(c: Cell):
    def okey(o: Ordinal):
        return tuple((okey(e), k) for e, k in o.terms)

    return (okey(c.lo), okey(c.hi), okey(c.rlo), c.rhi is None, okey(c.rhi or ZERO), c.parity)


def _syntactic_subcell(a: Cell, b: Cell) -> bool:
    """a obviously inside b."""
    if cmp(a.lo, b.lo) < 0 or cmp(a.hi, b.hi) > 0:
        return False
    if cmp(a.rlo, b.rlo) < 0:
        return False
    if b.rhi is not None and (a.rhi is None or cmp(a.rhi, b.rhi) > 0):
        return False
    return b.parity == "any" or b.parity == a.parity


def normalize(s: CanonicalSet) -> CanonicalSet:
    cells = [c for c in s.cells if cell_min(c) is not None]
    cells.sort(key=_sort_key)
    out: List[Cell] = []
    for c in cells:
        merged = False
        for i, o in enumerate(out):
            if _syntactic_subcell(c, o):
                merged = True
                break
            if _syntactic_subcell(o, c):
                out[i] = c
                merged = True
                break
            same_pred = (
                cmp(c.rlo, o.rlo) == 0
                and (c.rhi is None) == (o.rhi is None)
                and (c.rhi is None or cmp(c.rhi, o.rhi) == 0)
                and c.parity == o.parity
            )
            if same_pred and cmp(c.lo, succ(o.hi)) <= 0 and cmp(o.lo, succ(c.hi)) <= 0:
                lo = o.lo if cmp(o.lo, c.lo) <= 0 else c.lo
                hi = o.hi if cmp(o.hi, c.hi) >= 0 else c.hi
                out[i] = Cell(lo, hi, c.rlo, c.rhi, c.parity)
                merged = True
                break
        if not merged:
            out.append(c)
    out.sort(key=_sort_key)
    return CanonicalSet(s.space, tuple(out))


def _check_same_space(a: CanonicalSet, b: CanonicalSet) -> None:
    if cmp(a.space.top, b.space.top) != 0:
        raise SpaceMismatch(f"{a.space} vs {b.space}")


def _intersect_cells(a: Cell, b: Cell) -> Optional[Cell]:
    lo = a.lo if cmp(a.lo, b.lo) >= 0 else b.lo
    hi = a.hi if cmp(a.hi, b.hi) <= 0 else b.hi
    if cmp(lo, hi) > 0:
        return None
    rlo = a.rlo if cmp(a.rlo, b.rlo) >= 0 else b.rlo
    if a.rhi is None:
        rhi = b.rhi
    elif b.rhi is None:
        rhi = a.rhi
    else:
        rhi = a.rhi if cmp(a.rhi, b.rhi) <= 0 else b.rhi
    if rhi is not None and cmp(rhi, rlo) <= 0:
        return None
    if a.parity == "any":
        parity = b.parity
    elif b.parity == "any" or a.parity == b.parity:
        parity = a.parity
    else:
        return None
    return Cell(lo, hi, rlo, rhi, parity)


def intersect(a: CanonicalSet, b: CanonicalSet) -> CanonicalSet:
    _check_same_space(a, b)
    cells = []
    for ca in a.cells:
        for cb in b.cells:
            c = _intersect_cells(ca, cb)
            if c is not None:
                cells.append(c)
    return normalize(CanonicalSet(a.space, tuple(cells)))


def union(a: CanonicalSet, b: CanonicalSet) -> CanonicalSet:
    _check_same_space(a, b)
    return normalize(CanonicalSet(a.space, a.cells + b.cells))


def _interval_below(lo: Ordinal) -> List[Cell]:
    """[0, lo) as closed cells."""
    if lo.is_zero():
        return []
    if lo.is_successor():
        return [Cell(ZERO, pred(lo))]
    e, c = lo.terms[-1]
    y = Ordinal(lo.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    tail = Cell(succ(y) if not y.is_zero() else ZERO, lo, rlo=ZERO, rhi=e)
    if y.is_zero():
        return [tail]
    return [Cell(ZERO, y), tail]


def _complement_cell(c: Cell, space: SpaceTop) -> List[Cell]:
    out = list(_interval_below(c.lo))
    if cmp(c.hi, space.top) < 0:
        out.append(Cell(succ(c.hi), space.top))
    if not c.rlo.is_zero():
        out.append(Cell(c.lo, c.hi, rlo=ZERO, rhi=c.rlo))
    if c.rhi is not None:
        out.append(Cell(c.lo, c.hi, rlo=c.rhi, rhi=None))
    if c.parity != "any":
        flip = "odd" if c.parity == "even" else "even"
        out.append(Cell(c.lo, c.hi, rlo=c.rlo, rhi=c.rhi, parity=flip))
    return out


def complement(s: CanonicalSet) -> CanonicalSet:
    acc: List[Cell] = [Cell(ZERO, s.space.top)]
    for c in s.cells:
        comp = _complement_cell(c, s.space)
        nxt: List[Cell] = []
        for a in acc:
            for b in comp:
                i = _intersect_cells(a, b)
                if i is not None and cell_min(i) is not None:
                    nxt.append(i)
        acc = normalize(CanonicalSet(s.space, tuple(nxt))).cells  # type: ignore[assignment]
        acc = list(acc)
    return normalize(CanonicalSet(s.space, tuple(acc)))


def diff(a: CanonicalSet, b: CanonicalSet) -> CanonicalSet:
    _check_same_space(a, b)
    return intersect(a, complement(b))


def subset(a: CanonicalSet, b: CanonicalSet) -> bool:
    return is_empty(diff(a, b))


def sets_equal(a: CanonicalSet, b: CanonicalSet) -> bool:
    return subset(a, b) and subset(b, a)


def derived(s: CanonicalSet) -> CanonicalSet:
    cells: List[Cell] = []
    for c in s.cells:
        cells.extend(cell_derived(c))
    return normalize(CanonicalSet(s.space, tuple(cells)))


def closure(s: CanonicalSet) -> CanonicalSet:
    return union(s, derived(s))


# ---------------------------------------------------------------------------
# sampling / oracles
# ---------------------------------------------------------------------------


def random_point(top: Ordinal, rng: random.Random) -> Ordinal:
    """A random point of [0, top], biased toward structurally varied CNFs."""
    if top.is_zero():
        return ZERO
    if rng.random() < 0.12:
        return top
    # pick a term index and truncate below it
    j = rng.randrange(len(top.terms))
    prefix = top.terms[:j]
    e, c = top.terms[j]
    coeff = rng.randrange(c)  # strictly fewer copies of w^e at position j
    terms = list(prefix)
    if coeff:
        terms.append((e, coeff))
    # then anything < w^e
    cur = e
    last = terms[-1][0] if terms else None
    while not cur.is_zero() and rng.random() < 0.75:
        f = random_point(pred(cur) if cur.is_successor() else fundamental_seq(cur, rng.randrange(1, 4)), rng)
        if last is not None and cmp(f, last) >= 0:
            break
        k = rng.randrange(1, 5)
        terms.append((f, k))
        last = f
        if f.is_zero():
            break
        cur = f
    return Ordinal(tuple(terms))


def corner_points(s: CanonicalSet, extra: Sequence[Ordinal] = ()) -> List[Ordinal]:
    """Deterministic adversarial sample points: endpoints and their
    fundamental-sequence neighbors."""
    pts: List[Ordinal] = [ZERO, s.space.top]
    for c in s.cells:
        pts.extend([c.lo, c.hi])
    pts.extend(extra)
    out: List[Ordinal] = []
    for p in list(pts):
        out.append(p)
        if p.is_limit():
            for n in (1, 2, 5):
                out.append(fundamental_seq(p, n))
                out.append(succ(fundamental_seq(p, n)))
        if p.is_successor():
            out.append(pred(p))
        if cmp(succ(p), s.space.top) <= 0:
            out.append(succ(p))
    seen = set()
    uniq = []
    for p in out:
        k = str(p)
        if k not in seen and p in s.space:
            seen.add(k)
            uniq.append(p)
    return uniq


def is_limit_point_oracle(s: CanonicalSet, x: Ordinal, depth: int = 10) -> bool:
    """Fundamental-sequence oracle: x is a limit point of s iff every
    tail neighborhood (fs(x, n), x] meets s \\ {x}."""
    if not x.is_limit():
        return False
    sx = diff(s, singleton(s.space, x))
    for n in range(1, depth + 1):
        lo = succ(fundamental_seq(x, n))
        window = intersect(sx, CanonicalSet(s.space, (Cell(lo, x),)))
        if is_empty(window):
            return False
    return True


def closure_member_oracle(s: CanonicalSet, x: Ordinal) -> bool:
    return member(s, x) or is_limit_point_oracle(s, x)
