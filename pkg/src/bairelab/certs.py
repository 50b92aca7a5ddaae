"""Constructive classification proofs as checkable artifacts.

Each certificate pins a claim about a simple function to data that an
independent verifier can recheck from scratch: a stabilizing witness
sequence with an exact variation bound, an index-chain lower bound, a
separating set built from closure differences, a quarter-approximant, a
pointwise-stabilizing decomposition into finite closed sets, or a
Boolean-independent family of level-set pairs.

The witness machinery runs on the single canonical revelation rule:
stage k fixes the function's values on points of notation complexity at
most k and extends across unresolved limit points by the value at the
least revealed point above (see resolution.resolve).  Functions built as
clopen block sums use the same rule block-locally, which is itself a
valid stabilizing sequence and keeps per-block bounds meaningful.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction as Q
from typing import Dict, List, Optional, Sequence, Tuple

from . import cells as cs
from . import functions as fn
from . import engine as eng
from .ordinals import ZERO, Ordinal, add, cmp, complexity, nat, omega_pow, rank, succ
from .resolution import ceil_above, enumerate_resolved, resolve


class CertError(Exception):
    pass


class BadParams(CertError):
    pass


class IndexNotFinite(CertError):
    pass


class RangeError(CertError):
    pass


class InsufficientIndex(CertError):
    pass


class BudgetExceeded(CertError):
    pass


class UnsupportedFunction(CertError):
    pass


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    detail: str = ""

    def __bool__(self) -> bool:  # pragma: no cover - convenience
        return self.ok


# ---------------------------------------------------------------------------
# rank-homogeneity: when every part is a union of full rank layers the
# function factors through the Cantor-Bendixson rank, and the canonical
# witness admits an exact per-class variation analysis.
# ---------------------------------------------------------------------------


def finite_space_rank(space: cs.SpaceTop) -> Optional[int]:
    r = rank(space.top)
    return r.as_int() if r.is_finite() else None


def rank_value_table(f: fn.SimpleFn) -> Optional[Dict[int, Q]]:
    """value-by-rank table when f is rank-homogeneous, else None."""
    R = finite_space_rank(f.space)
    if R is None:
        return None
    table: Dict[int, Q] = {}
    for r in range(R + 1):
        layer = cs.make_set(f.space, [cs.rank_eq(ZERO, f.space.top, nat(r))])
        if cs.is_empty(layer):
            continue
        val: Optional[Q] = None
        for s, v in f.parts:
            if cs.is_empty(cs.intersect(layer, s)):
                continue
            if not cs.subset(layer, s):
                return None  # a layer split across values: not a rank function
            val = v
            break
        if val is None:
            return None
        table[r] = val
    return table


def _chain_var_sup(table: Dict[int, Q], R: int) -> Tuple[Q, Tuple[int, ...]]:
    """Maximize |v(R)| + sum of |consecutive differences| over strictly
    descending rank chains starting at the top rank R."""
    best: Dict[int, Tuple[Q, Tuple[int, ...]]] = {}
    for r in range(R + 1):
        b, ch = Q(0), (r,)
        for r2 in range(r):
            s2, c2 = best[r2]
            cand = abs(table[r] - table[r2]) + s2
            if cand > b:
                b, ch = cand, (r,) + c2
        best[r] = (b, ch)
    sc, chain = best[R]
    return abs(table[R]) + sc, chain


def _realize_chain(chain: Sequence[int], R: int, top: Ordinal) -> Ordinal:
    """A point whose canonical revelation visits exactly the given
    descending rank chain (first element must be R).

    Ranks before the last are visited by carries: a coefficient larger
    than the stage budget at position rho - 1 rounds the point up to
    w^rho until the stage passes the coefficient.  Blocker coefficients
    grow toward lower positions, so the blockers resolve top-down and
    the carry target walks down the chain.  The last rank is the point's
    own rank, reached at full resolution.
    """
    if len(chain) == 1:
        return top
    base = R + 3
    x = ZERO
    for j, rho in enumerate(chain[:-1]):
        x = add(x, omega_pow(nat(rho - 1), base + 2 * j))
    last = chain[-1]
    if last < chain[-2] - 1:
        # the lowest blocker sits at position chain[-2] - 1; a cheap unit
        # digit below it pins the point's own rank without blocking
        x = add(x, omega_pow(nat(last)))
    return x


def witness_values(f: fn.SimpleFn, x: Ordinal, k_max: Optional[int] = None) -> List[Q]:
    """Stage values f_k(x) of the canonical witness, k = 1..k_max."""
    top = f.space.top
    kk = k_max if k_max is not None else complexity(x) + 1
    return [fn.eval_fn(f, resolve(x, k, top)) for k in range(1, kk + 1)]


def variation_at(f: fn.SimpleFn, x: Ordinal, k_max: Optional[int] = None) -> Q:
    """|f_1(x)| + sum |f_{k+1}(x) - f_k(x)| along the canonical witness
    (the f_0 = 0 convention folds the first term into the sum)."""
    vals = witness_values(f, x, k_max)
    total = abs(vals[0])
    for a, b in zip(vals, vals[1:]):
        total += abs(b - a)
    return total


def witness_stage(f: fn.SimpleFn, k: int, cap: int = 200_000) -> fn.StepFn:
    """Materialize stage k of the canonical witness as a StepFn (only
    feasible when the revealed set is small enough to enumerate)."""
    top = f.space.top
    pts = enumerate_resolved(top, k, cap=cap)
    pieces: List[Tuple[Ordinal, Ordinal, Q]] = []
    prev: Optional[Ordinal] = None
    for p in pts:
        lo = ZERO if prev is None else succ(prev)
        pieces.append((lo, p, fn.eval_fn(f, p)))
        prev = p
    return fn.StepFn(f.space, tuple(pieces))


@dataclass(frozen=True)
class WitnessUpper:
    variant = "WitnessUpper"
    subject: fn.SimpleFn
    rule: str  # 'canonical' | 'blockwise-canonical' | 'finite-exhaustive'
    bound: Optional[Q]  # None: no finite bound certified (family diverges)
    argmax: Optional[Ordinal]
    chain: Tuple[int, ...]
    table: Tuple[Tuple[int, Q], ...]
    per_block: Tuple[Tuple[str, Optional[Q]], ...] = ()
    notes: str = ""


def _witness_single(f: fn.SimpleFn) -> WitnessUpper:
    R = finite_space_rank(f.space)
    if R == 0:
        # finite discrete space: brute force over all points
        best, arg = Q(0), f.space.top
        n = f.space.top.as_int()
        for i in range(n + 1):
            v = variation_at(f, nat(i))
            if v > best:
                best, arg = v, nat(i)
        return WitnessUpper(f, "finite-exhaustive", best, arg, (0,), ())
    table = rank_value_table(f)
    if table is None or R is None:
        raise UnsupportedFunction(
            f"no canonical variation analysis for {f}: not rank-homogeneous"
        )
    bound, chain = _chain_var_sup(table, R)
    x = _realize_chain(chain, R, f.space.top)
    check = variation_at(f, x, k_max=2 * R + 4 + 2 * len(chain))
    if check != bound:
        raise CertError(
            f"variation witness mismatch at {x}: computed {check}, expected {bound}"
        )
    return WitnessUpper(
        f,
        "canonical",
        bound,
        x,
        chain,
        tuple(sorted(table.items())),
    )


def witness_upper(f: fn.SimpleFn) -> WitnessUpper:
    """Certified upper bound on the d-norm via the canonical stabilizing
    sequence, with the exact variation sup and a realizing point."""
    if f.blocks:
        per: List[Tuple[str, Optional[Q]]] = []
        bounds: List[Q] = []
        for a, b in f.blocks:
            g = eng._block_restriction(f, a, b)
            sub = witness_upper(g)
            per.append((f"[{a}, {b}]", sub.bound))
            if sub.bound is not None:
                bounds.append(sub.bound)
        top_val = abs(fn.eval_fn(f, f.space.top))
        if len(bounds) < len(per):
            return WitnessUpper(
                f, "blockwise-canonical", None, None, (), (), tuple(per),
                notes="some block has no finite witness bound",
            )
        norms = (
            eng.i_norms(f) if finite_space_rank(f.space) is None else None
        )
        if norms is not None and isinstance(norms.i_value, eng.Diverges):
            # block sums are finite prefixes of an infinite schema; growing
            # certified chain lower bounds rule out any uniform upper bound
            return WitnessUpper(
                f, "blockwise-canonical", None, None, (), (), tuple(per),
                notes=f"chain lower bounds grow with the block: {norms.i_value}",
            )
        return WitnessUpper(
            f,
            "blockwise-canonical",
            max(bounds + [top_val]),
            None,
            (),
            (),
            tuple(per),
        )
    if finite_space_rank(f.space) is None:
        return WitnessUpper(
            f, "canonical", None, None, (), (),
            notes="space of infinite rank: variation unbounded over rank classes",
        )
    return _witness_single(f)


# ---------------------------------------------------------------------------
# chain lower bounds
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ChainLower:
    variant = "ChainLower"
    subject: fn.SimpleFn
    bound: Optional[Q]  # None: diverges
    chain: Tuple[Q, ...]
    sup_norm: Q
    diverges: Optional[eng.Diverges] = None
    per_block: Tuple[Tuple[str, Q], ...] = ()


def dnorm_lower(f: fn.SimpleFn) -> ChainLower:
    """Certified lower bound max(best chain sum / 4, sup norm)."""
    sup = f.sup_norm()
    if finite_space_rank(f.space) is not None:
        ch = eng.best_chain(f)
        return ChainLower(f, max(ch.total / 4, sup), ch.deltas, sup)
    norms = eng.i_norms(f)
    if isinstance(norms.i_value, eng.Diverges):
        return ChainLower(f, None, (), sup, diverges=norms.i_value)
    if f.blocks:
        per: List[Tuple[str, Q]] = []
        best = sup
        best_chain: Tuple[Q, ...] = ()
        for a, b in f.blocks:
            g = eng._block_restriction(f, a, b)
            ch = eng.best_chain(g)
            per.append((f"[{a}, {b}]", ch.total))
            if ch.total / 4 > best:
                best, best_chain = ch.total / 4, ch.deltas
        return ChainLower(f, best, best_chain, sup, per_block=tuple(per))
    return ChainLower(f, max(norms.i_value / 4, sup), (), sup)


# ---------------------------------------------------------------------------
# separation through the closure-difference algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SeparationD:
    variant = "SeparationD"
    subject: fn.SimpleFn
    a: Q
    b: Q
    D: cs.CanonicalSet
    pieces: Tuple[Tuple[cs.CanonicalSet, cs.CanonicalSet], ...]  # (kept, removed)
    alpha: int


def separate_by_D(f: fn.SimpleFn, a, b) -> SeparationD:
    """Build the separating set D = union over chain stages of
    closure([F<=a] on the stage) minus closure([F>=b] on the stage);
    certified by the containment checks before returning."""
    a, b = Q(a), Q(b)
    if a >= b:
        raise BadParams(f"need a < b, got a={a}, b={b}")
    tr = eng.index_run(f, eng.alpha_kind(a, b))
    stop = tr.empty_at()
    if stop is None or not stop.is_finite():
        raise IndexNotFinite(f"two-sided index of {f} at ({a}, {b}) is not finite")
    n = stop.as_int()
    low = fn.level_set(f, "<=", a)
    high = fn.level_set(f, ">=", b)
    stage_sets = {s.as_int(): K for s, K in tr.stages if s.is_finite()}
    D = cs.empty_set(f.space)
    pieces: List[Tuple[cs.CanonicalSet, cs.CanonicalSet]] = []
    for i in range(1, n + 1):
        K = stage_sets[i - 1]
        kept = cs.closure(cs.intersect(low, K))
        removed = cs.closure(cs.intersect(high, K))
        pieces.append((kept, removed))
        D = cs.union(D, cs.diff(kept, removed))
    if not cs.subset(low, D):
        raise CertError("separation failed: [F<=a] not inside D")
    if not cs.is_empty(cs.intersect(D, high)):
        raise CertError("separation failed: D meets [F>=b]")
    return SeparationD(f, a, b, D, tuple(pieces), n)


# ---------------------------------------------------------------------------
# quarter-approximants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Approximant:
    variant = "Approximant"
    subject: fn.SimpleFn
    m: int
    G: fn.SimpleFn
    sup_error: Q
    d_bound: Optional[Q]
    levels: Tuple[cs.CanonicalSet, ...]  # nested upper-level separators
    separations: Tuple[SeparationD, ...]


def b14_approximant(f: fn.SimpleFn, m: int) -> Approximant:
    """Approximate f within 1/m by a combination of closure-difference
    indicator sets, with a certified witness bound for the combination."""
    vals = f.values()
    if any(v < 0 or v > 1 for v in vals):
        raise RangeError("approximant construction needs range inside [0, 1]")
    if m < 1:
        raise BadParams("m must be positive")
    bs = eng.beta_sup(f)
    if not bs.value.is_finite():
        raise IndexNotFinite(f"one-sided index sup of {f} is {bs.value}")
    seps: List[SeparationD] = []
    uppers: List[cs.CanonicalSet] = []
    for i in range(1, m + 1):
        sep = separate_by_D(f, Q(i - 1, m), Q(i, m))
        seps.append(sep)
        # the complement separates from the other side: it contains
        # [F >= i/m] and misses [F <= (i-1)/m]
        uppers.append(cs.complement(sep.D))
    # force nesting by running intersections; containments survive because
    # [F >= i/m] sits inside every earlier complement as well
    nested: List[cs.CanonicalSet] = []
    acc = cs.full_set(f.space)
    for E in uppers:
        acc = cs.intersect(acc, E)
        nested.append(acc)
    parts: List[Tuple[cs.CanonicalSet, Q]] = []
    prev = cs.full_set(f.space)
    for j, E in enumerate(nested):
        parts.append((cs.diff(prev, E), Q(j, m)))
        prev = E
    parts.append((prev, Q(1)))
    G = fn.make_simple(f.space, [(s, v) for s, v in parts if not cs.is_empty(s)],
                       label=f"approx(1/{m}) of {f.label or f}")
    err = Q(0)
    for sf, vf in f.parts:
        for sg, vg in G.parts:
            if not cs.is_empty(cs.intersect(sf, sg)):
                err = max(err, abs(vf - vg))
    if err > Q(1, m):
        raise CertError(f"approximant error {err} exceeds 1/{m}")
    d_bound = witness_upper(G).bound
    return Approximant(f, m, G, err, d_bound, tuple(nested), tuple(seps))


# ---------------------------------------------------------------------------
# pointwise-stabilizing decompositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PSDecomposition:
    variant = "PSDecomposition"
    subject: fn.SimpleFn
    n: int
    sets: Tuple[Tuple[Ordinal, ...], ...]  # K_1 .. K_n, materialized
    rule: str = "points of notation complexity <= n, plus the top point"


def ps_decomposition(f: fn.SimpleFn, n: int, cap: int = 50_000) -> PSDecomposition:
    if n < 1:
        raise BadParams("n must be positive")
    sets = tuple(
        tuple(enumerate_resolved(f.space.top, k, cap=cap)) for k in range(1, n + 1)
    )
    return PSDecomposition(f, n, sets)


# ---------------------------------------------------------------------------
# independent families
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IndependentFamily:
    variant = "IndependentFamily"
    subject: fn.SimpleFn
    a: Q
    b: Q
    a1: Q
    b1: Q
    m: int
    stages: Tuple[int, ...]
    # per Boolean pattern (True = the low set A_i) the witness point
    witnesses: Tuple[Tuple[Tuple[bool, ...], Ordinal], ...]


def _side_rank(table: Dict[int, Q], upto: int, low: bool, a1: Q, b1: Q) -> Optional[int]:
    for r in range(upto, -1, -1):
        v = table[r]
        if (low and v <= a1) or (not low and v >= b1):
            return r
    return None


def _pattern_point(
    table: Dict[int, Q], R: int, pattern: Sequence[bool], a1: Q, b1: Q,
    stages: Sequence[int],
) -> Optional[Ordinal]:
    ranks: List[int] = []
    cur = R
    for low in pattern:
        r = _side_rank(table, cur, low, a1, b1)
        if r is None:
            return None
        ranks.append(r)
        cur = r
    # blockers: one per distinct rank, resolving just after its last stage
    x = ZERO
    used: List[int] = []
    for i, r in enumerate(ranks):
        if used and used[-1] == r:
            continue
        used.append(r)
        last_stage = max(s for s, rr in zip(stages, ranks) if rr == r)
        if r >= 1:
            x = add(x, omega_pow(nat(r - 1), last_stage + 1))
        elif not x.terms or cmp(x.terms[-1][0], ZERO) != 0:
            # a rank-0 visit is full resolution; a cheap unit digit at
            # position 0 gives the point rank 0 without disturbing carries
            x = add(x, nat(1))
    return x


def independent_family(
    f: fn.SimpleFn, a, b, a1, b1, m: int
) -> IndependentFamily:
    """Level-set pairs A_i = [f_{n_i} <= a'], B_i = [f_{n_i} >= b'] of
    chosen canonical witness stages, with every Boolean intersection
    pattern inhabited by an explicitly checked point."""
    a, b, a1, b1 = Q(a), Q(b), Q(a1), Q(b1)
    if not (a < a1 < b1 < b):
        raise BadParams(f"need a < a' < b' < b, got {a}, {a1}, {b1}, {b}")
    if m < 1:
        raise BadParams("m must be positive")
    if m > 12:
        raise BudgetExceeded(f"m = {m} exceeds the exhaustive-verification budget")
    tr = eng.index_run(f, eng.alpha_kind(a, b))
    stop = tr.empty_at()
    if stop is not None and stop.is_finite() and stop.as_int() <= m:
        raise InsufficientIndex(
            f"two-sided chain of {f} at ({a}, {b}) empties at {stop} <= {m}"
        )
    R = finite_space_rank(f.space)
    table = rank_value_table(f)
    if table is None or R is None:
        raise UnsupportedFunction(
            "independent-family construction implemented for rank-homogeneous "
            "functions on finite-rank spaces"
        )
    stages = tuple(R + 3 + 2 * i for i in range(1, m + 1))
    top = f.space.top
    witnesses: List[Tuple[Tuple[bool, ...], Ordinal]] = []
    for bits in itertools.product((True, False), repeat=m):
        x = _pattern_point(table, R, bits, a1, b1, stages)
        if x is None:
            raise InsufficientIndex(
                f"no rank chain realizes pattern {bits} within rank {R}"
            )
        for low, s in zip(bits, stages):
            v = fn.eval_fn(f, resolve(x, s, top))
            if low and v > a1:
                raise CertError(f"pattern {bits}: stage {s} value {v} > {a1} at {x}")
            if not low and v < b1:
                raise CertError(f"pattern {bits}: stage {s} value {v} < {b1} at {x}")
        witnesses.append((bits, x))
    return IndependentFamily(f, a, b, a1, b1, m, stages, tuple(witnesses))


def family_level_set(
    cert: IndependentFamily, i: int, low: bool, cap: int = 200_000
) -> cs.CanonicalSet:
    """Materialize A_i (low) or B_i as a canonical set, by laying out the
    chosen stage as a step function.  Feasible on small spaces only."""
    f = cert.subject
    stage = witness_stage(f, cert.stages[i], cap=cap)
    out = cs.empty_set(f.space)
    for lo, hi, v in stage.pieces:
        if (low and v <= cert.a1) or (not low and v >= cert.b1):
            out = cs.union(out, cs.make_set(f.space, [cs.Cell(lo, hi)]))
    return out


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

Certificate = object  # any of the dataclasses above


def verify(c, rng_samples: int = 40, seed: int = 7) -> VerifyResult:
    """Recheck every claim in the certificate from scratch."""
    try:
        if isinstance(c, WitnessUpper):
            return _verify_witness(c, rng_samples, seed)
        if isinstance(c, ChainLower):
            return _verify_chain(c)
        if isinstance(c, SeparationD):
            return _verify_separation(c)
        if isinstance(c, Approximant):
            return _verify_approximant(c)
        if isinstance(c, PSDecomposition):
            return _verify_ps(c, rng_samples, seed)
        if isinstance(c, IndependentFamily):
            return _verify_family(c)
    except CertError as e:  # pragma: no cover - defensive
        return VerifyResult(False, str(e))
    return VerifyResult(False, f"unknown certificate {type(c).__name__}")


def _verify_witness(c: WitnessUpper, samples: int, seed: int) -> VerifyResult:
    import random

    f = c.subject
    fresh = witness_upper(f)
    if fresh.bound != c.bound:
        return VerifyResult(
            False, f"recomputed bound {fresh.bound} != claimed {c.bound}"
        )
    if c.bound is None:
        return VerifyResult(True, "no finite bound claimed; divergence reproduced")
    if c.rule == "canonical" and c.argmax is not None:
        v = variation_at(f, c.argmax, k_max=complexity(c.argmax) + 2)
        if v != c.bound:
            return VerifyResult(
                False, f"variation at claimed argmax is {v}, not {c.bound}"
            )
    rng = random.Random(seed)
    for _ in range(samples):
        x = cs.random_point(f.space.top, rng)
        v = variation_at(f, x)
        if v > c.bound:
            return VerifyResult(False, f"variation {v} at {x} exceeds bound {c.bound}")
        vals = witness_values(f, x)
        if vals[-1] != fn.eval_fn(f, x):
            return VerifyResult(False, f"witness fails to stabilize at {x}")
    return VerifyResult(True)


def _verify_chain(c: ChainLower) -> VerifyResult:
    fresh = dnorm_lower(c.subject)
    if fresh.bound != c.bound:
        return VerifyResult(False, f"recomputed bound {fresh.bound} != {c.bound}")
    if c.sup_norm != c.subject.sup_norm():
        return VerifyResult(False, "sup-norm mismatch")
    return VerifyResult(True)


def _verify_separation(c: SeparationD) -> VerifyResult:
    f = c.subject
    low = fn.level_set(f, "<=", c.a)
    high = fn.level_set(f, ">=", c.b)
    if not cs.subset(low, c.D):
        missing = cs.min_elem(cs.diff(low, c.D))
        return VerifyResult(False, f"point {missing} in [F<={c.a}] but not in D")
    if not cs.is_empty(cs.intersect(c.D, high)):
        bad = cs.min_elem(cs.intersect(c.D, high))
        return VerifyResult(False, f"point {bad} in D meets [F>={c.b}]")
    fresh = separate_by_D(f, c.a, c.b)
    if not cs.sets_equal(fresh.D, c.D):
        return VerifyResult(False, "D differs from the closure-difference formula")
    return VerifyResult(True)


def _verify_approximant(c: Approximant) -> VerifyResult:
    f, G = c.subject, c.G
    err = Q(0)
    for sf, vf in f.parts:
        for sg, vg in G.parts:
            if not cs.is_empty(cs.intersect(sf, sg)):
                err = max(err, abs(vf - vg))
    if err != c.sup_error:
        return VerifyResult(False, f"recomputed sup error {err} != {c.sup_error}")
    if err > Q(1, c.m):
        return VerifyResult(False, f"sup error {err} exceeds 1/{c.m}")
    for E, E2 in zip(c.levels, c.levels[1:]):
        if not cs.subset(E2, E):
            return VerifyResult(False, "level separators are not nested")
    for i, E in enumerate(c.levels, start=1):
        if not cs.subset(fn.level_set(f, ">=", Q(i, c.m)), E):
            return VerifyResult(False, f"[F>={i}/{c.m}] escapes separator {i}")
        if not cs.is_empty(
            cs.intersect(E, fn.level_set(f, "<=", Q(i - 1, c.m)))
        ):
            return VerifyResult(False, f"separator {i} meets [F<={i-1}/{c.m}]")
    fresh = witness_upper(G).bound
    if fresh != c.d_bound:
        return VerifyResult(False, f"witness bound of G is {fresh}, not {c.d_bound}")
    return VerifyResult(True)


def _verify_ps(c: PSDecomposition, samples: int, seed: int) -> VerifyResult:
    import random

    f = c.subject
    top = f.space.top
    for k, pts in enumerate(c.sets, start=1):
        expected = enumerate_resolved(top, k)
        if [str(p) for p in pts] != [str(p) for p in expected]:
            return VerifyResult(False, f"K_{k} does not match the complexity rule")
    for a, b in zip(c.sets, c.sets[1:]):
        if not set(str(p) for p in a) <= set(str(p) for p in b):
            return VerifyResult(False, "decomposition is not monotone")
    rng = random.Random(seed)
    for _ in range(samples):
        x = cs.random_point(top, rng)
        n = complexity(x)
        if n <= c.n and str(x) not in {str(p) for p in c.sets[n - 1] if n >= 1}:
            if not (n == 0 and x.is_zero()):
                return VerifyResult(False, f"{x} of complexity {n} missing from K_{n}")
    return VerifyResult(True)


def _verify_family(c: IndependentFamily) -> VerifyResult:
    f = c.subject
    top = f.space.top
    seen = set()
    for bits, x in c.witnesses:
        seen.add(bits)
        for low, s in zip(bits, c.stages):
            v = fn.eval_fn(f, resolve(x, s, top))
            if low and v > c.a1:
                return VerifyResult(
                    False, f"pattern {bits}: f_{s}({x}) = {v} > {c.a1}"
                )
            if not low and v < c.b1:
                return VerifyResult(
                    False, f"pattern {bits}: f_{s}({x}) = {v} < {c.b1}"
                )
    if len(seen) != 2 ** c.m:
        return VerifyResult(False, f"only {len(seen)} of {2 ** c.m} patterns covered")
    return VerifyResult(True)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def cert_to_json(c) -> dict:
    def q(x):
        return None if x is None else str(Q(x))

    base = {"kind": type(c).__name__, "subject": str(c.subject)}
    if isinstance(c, WitnessUpper):
        base["claims"] = {"d_norm_upper": q(c.bound)}
        base["evidence"] = {
            "rule": c.rule,
            "argmax": None if c.argmax is None else str(c.argmax),
            "rank_chain": list(c.chain),
            "value_table": [[r, q(v)] for r, v in c.table],
            "per_block": [[lbl, q(b)] for lbl, b in c.per_block],
            "notes": c.notes,
        }
    elif isinstance(c, ChainLower):
        base["claims"] = {"d_norm_lower": q(c.bound)}
        base["evidence"] = {
            "chain_deltas": [q(d) for d in c.chain],
            "sup_norm": q(c.sup_norm),
            "diverges": None if c.diverges is None else str(c.diverges),
            "per_block": [[lbl, q(t)] for lbl, t in c.per_block],
        }
    elif isinstance(c, SeparationD):
        base["claims"] = {
            "separates": [q(c.a), q(c.b)],
            "alpha": c.alpha,
        }
        base["evidence"] = {"D": str(c.D), "terms": len(c.pieces)}
    elif isinstance(c, Approximant):
        base["claims"] = {
            "sup_error": q(c.sup_error),
            "error_bound": q(Q(1, c.m)),
            "d_bound": q(c.d_bound),
        }
        base["evidence"] = {
            "m": c.m,
            "levels": [str(E) for E in c.levels],
            "G_values": [q(v) for v in c.G.values()],
        }
    elif isinstance(c, PSDecomposition):
        base["claims"] = {"stages": c.n, "rule": c.rule}
        base["evidence"] = {
            "sizes": [len(s) for s in c.sets],
            "K_1": [str(p) for p in c.sets[0]],
        }
    elif isinstance(c, IndependentFamily):
        base["claims"] = {
            "m": c.m,
            "patterns": 2 ** c.m,
            "thresholds": [q(c.a1), q(c.b1)],
        }
        base["evidence"] = {
            "stages": list(c.stages),
            "witnesses": [
                ["".join("A" if b else "B" for b in bits), str(x)]
                for bits, x in c.witnesses
            ],
        }
    return base
