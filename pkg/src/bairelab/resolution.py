"""Canonical resolution of points by notation complexity.

The canonical stabilizing sequence reveals points in order of their CNF
complexity (term count, coefficients, and exponent complexity,
recursively).  Stage k of the sequence assigns every point x the value
of the least revealed point above it, ceil(x, k) — the clopen-extension
analogue of extending across unresolved limit points.

ceil_above computes that least revealed point exactly, digit by digit,
with carries; enumerate_resolved materializes a stage's revealed set
when it is small enough to lay out as a step function.
"""

from __future__ import annotations

from typing import List, Optional

from .ordinals import ZERO, Ordinal, add, cmp, complexity, omega_pow, succ


def ceil_above(x: Ordinal, k: int) -> Optional[Ordinal]:
    """Least y >= x with complexity(y) <= k; None when no such y exists
    (every candidate overflows the notation budget)."""
    if x.is_zero():
        return ZERO
    if k <= 0:
        return None
    if complexity(x) <= k:
        return x
    return _ceil(x, k, None, k)


def _least_exp(e: Ordinal, k: int) -> Optional[Ordinal]:
    """Least exponent >= e with complexity <= k - 1."""
    if k - 1 <= 0:
        return e if e.is_zero() else None
    return ceil_above(e, k - 1)


def _ceil(x: Ordinal, k: int, exp_bound: Optional[Ordinal], terms_left: int) -> Optional[Ordinal]:
    """Least y >= x whose terms have exponents < exp_bound (None: unbounded),
    coefficients <= k, exponents of complexity <= k-1, and at most
    terms_left terms.  None means the caller must carry upward."""
    if x.is_zero():
        return ZERO
    if terms_left <= 0:
        return None
    e0, c0 = x.terms[0]
    rest = Ordinal(x.terms[1:])
    ee = _least_exp(e0, k)
    if ee is None or (exp_bound is not None and cmp(ee, exp_bound) >= 0):
        return None
    if cmp(ee, e0) > 0:
        return omega_pow(ee)
    if c0 > k:
        f = _least_exp(succ(e0), k)
        if f is None or (exp_bound is not None and cmp(f, exp_bound) >= 0):
            return None
        return omega_pow(f)
    z = _ceil(rest, k, e0, terms_left - 1)
    head = Ordinal(((e0, c0),))
    if z is not None:
        return add(head, z)
    # carry into this coefficient
    if c0 + 1 <= k:
        return Ordinal(((e0, c0 + 1),))
    f = _least_exp(succ(e0), k)
    if f is None or (exp_bound is not None and cmp(f, exp_bound) >= 0):
        return None
    return omega_pow(f)


def resolve(x: Ordinal, k: int, top: Ordinal) -> Ordinal:
    """Stage-k revelation target of x inside [0, top]: the least revealed
    point above x, falling back to the always-revealed top point."""
    y = ceil_above(x, k)
    if y is None or cmp(y, top) > 0:
        return top
    return y


def resolution_stages(x: Ordinal, top: Ordinal, k_max: Optional[int] = None) -> List[Ordinal]:
    """The chain of values resolve(x, k) for k = 1..complexity(x); the
    chain is constant beyond complexity(x)."""
    kk = complexity(x) if k_max is None else k_max
    return [resolve(x, k, top) for k in range(1, max(kk, 1) + 1)]


def enumerate_resolved(top: Ordinal, k: int, cap: int = 200_000) -> List[Ordinal]:
    """All points of [0, top] with complexity <= k, sorted, top appended.
    Raises OverflowError when the stage has more than cap points."""
    out: List[Ordinal] = []

    def gen(bound: Ordinal, budget: int) -> List[Ordinal]:
        # ordinals <= bound with complexity <= budget
        if budget <= 0:
            return [ZERO]
        res: List[Ordinal] = []

        def build(prefix: List, exp_cands: List[Ordinal], terms_left: int):
            if len(res) > cap:
                raise OverflowError(f"stage {k} has more than {cap} points")
            cur = Ordinal(tuple(prefix))
            if cmp(cur, bound) <= 0:
                res.append(cur)
            else:
                return
            if terms_left <= 0:
                return
            last_exp = prefix[-1][0] if prefix else None
            for e in exp_cands:
                if last_exp is not None and cmp(e, last_exp) >= 0:
                    continue
                for c in range(1, budget + 1):
                    nxt = prefix + [(e, c)]
                    if cmp(Ordinal(tuple(nxt)), bound) > 0:
                        break
                    build(nxt, exp_cands, terms_left - 1)

        # candidate exponents: complexity <= budget - 1, w^e <= bound
        ecands: List[Ordinal] = []
        if not bound.is_zero():
            lead = bound.terms[0][0]
            for e in gen(lead, budget - 1):
                if cmp(omega_pow(e), bound) <= 0:
                    ecands.append(e)
        ecands.sort(key=_okey, reverse=True)
        build([], ecands, budget)
        return res

    pts = gen(top, k)
    keys = set()
    for p in pts + [top]:
        s = str(p)
        if s not in keys:
            keys.add(s)
            out.append(p)
    out.sort(key=_okey)
    return out


def _okey(o: Ordinal):
    def key(t: Ordinal):
        return tuple((key(e), c) for e, c in t.terms)

    return key(o)
