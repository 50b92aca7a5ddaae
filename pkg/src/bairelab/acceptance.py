"""Acceptance matrix: thirteen end-to-end checks, one per release gate.

Each criterion is a function returning (passed, detail); run_all executes
a selection and reports a row per criterion.  The CLI `selftest`
subcommand and tests/test_acceptance.py both dispatch through here so
the command line and the test suite certify the same facts.

Everything is exact rational / exact ordinal arithmetic; the only
tolerances are the wall-clock budgets some criteria carry.
"""

from __future__ import annotations

import dataclasses
import io
import random
import time
from contextlib import redirect_stdout
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from . import cells as cs
from . import certs
from . import engine as eng
from . import functions as fn
from . import structure as st
from .ordinals import OMEGA, ZERO, Ordinal, add, cmp, nat, omega_pow, succ

Q = Fraction


@dataclasses.dataclass(frozen=True)
class CriterionRow:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float


def _fail(msg: str) -> Tuple[bool, str]:
    return False, msg


def _ok(msg: str) -> Tuple[bool, str]:
    return True, msg


# a fixed, representative instantiation of the parameterized gallery;
# criteria quantifying over "all gallery functions" range over these
def _gallery_instances() -> List[fn.SimpleFn]:
    return [
        fn.gallery("f_delta", omega_pow(nat(2))),
        fn.gallery("f_delta", omega_pow(nat(3))),
        fn.gallery("type0", 2),
        fn.gallery("type0", 3),
        fn.gallery("prop53b", 3),
        fn.gallery("prop53c"),
        fn.gallery("prop53d"),
        fn.gallery("prop53a", 2),
    ]


# -- 1: derived-set identification ------------------------------------------


def criterion_1() -> Tuple[bool, str]:
    for n in range(1, 6):
        f = fn.layer_indicator(omega_pow(nat(n)))
        tr = eng.beta_index(f, Q(1))
        if tr.empty_at() != nat(n + 1):
            return _fail(f"beta(fdelta(w^{n}), 1) terminal {tr.terminal}, wanted {n + 1}")
        ref = cs.full_set(f.space)
        for stage, s in tr.stages:
            if not cs.sets_equal(s, ref):
                return _fail(f"n={n} stage {stage} is not the {stage}-th derived set")
            ref = cs.derived(ref)
    return _ok("beta(fdelta(w^n), 1) = n+1 with stages = derived sets, n = 1..5")


# -- 2: transfinite boundary -------------------------------------------------


def criterion_2() -> Tuple[bool, str]:
    f = fn.gallery("prop53c")
    tr = eng.beta_index(f, Q(1))
    at_omega = [s for stage, s in tr.stages if cmp(stage, OMEGA) == 0]
    if not at_omega or cs.is_empty(at_omega[0]):
        return _fail("stage omega missing or empty")
    if tr.empty_at() != succ(OMEGA):
        return _fail(f"terminal {tr.terminal}, wanted empty_at w+1")
    rep = eng.classify(f)
    if rep.b12.status != "CertifiedNo":
        return _fail(f"prop53c b12 = {rep.b12.status}, wanted CertifiedNo")
    return _ok("beta(prop53c, 1) passes omega nonempty, EmptyAt(w+1); b12 CertifiedNo")


# -- 3: containment law ------------------------------------------------------


def criterion_3() -> Tuple[bool, str]:
    checked = 0
    for f in _gallery_instances():
        vals = f.values()
        for a in vals:
            for b in vals:
                if a >= b:
                    continue
                tr_a = eng.index_run(f, eng.alpha_kind(a, b))
                tr_b = eng.index_run(f, eng.beta_kind(b - a))
                beta_stages = {str(stage): s for stage, s in tr_b.stages}
                for stage, s in tr_a.stages:
                    t = beta_stages.get(str(stage))
                    if t is None:
                        # beta emptied earlier; alpha must be empty here too
                        if not cs.is_empty(s):
                            return _fail(
                                f"{f}: alpha stage {stage} nonempty past beta trace "
                                f"for (a,b)=({a},{b})"
                            )
                        continue
                    if not cs.subset(s, t):
                        return _fail(
                            f"{f}: K_{stage}(F;{a},{b}) not within K_{stage}(F,{b - a})"
                        )
                    checked += 1
    return _ok(f"containment K_a(F;a,b) within K_a(F,b-a) on {checked} stages")


# -- 4: chain-vs-witness consistency -----------------------------------------


def criterion_4() -> Tuple[bool, str]:
    checked = 0
    for f in _gallery_instances():
        wu = certs.witness_upper(f)
        dl = certs.dnorm_lower(f)
        if wu.bound is not None:
            if dl.bound is not None and dl.bound > wu.bound:
                return _fail(f"{f}: dnorm_lower {dl.bound} > witness_upper {wu.bound}")
            for delta in fn.value_gaps(f):
                tr = eng.beta_index(f, delta)
                for stage, s in tr.stages:
                    if cs.is_empty(s) or not stage.is_finite():
                        continue
                    m = stage.as_int()
                    if wu.bound < Q(m) * delta / 4:
                        return _fail(
                            f"{f}: K_{m}(F,{delta}) nonempty but witness bound "
                            f"{wu.bound} < m*delta/4"
                        )
                    checked += 1
    return _ok(f"witness_upper >= m*delta/4 on {checked} nonempty stages; lower <= upper")


# -- 5: separation round trip -------------------------------------------------


def criterion_5() -> Tuple[bool, str]:
    instances = 0
    for f in _gallery_instances():
        bs = eng.beta_sup(f)
        if not bs.exact or cmp(bs.value, OMEGA) > 0:
            continue
        vals = f.values()
        for a in vals:
            for b in vals:
                if a >= b:
                    continue
                c = certs.separate_by_D(f, a, b)
                vr = certs.verify(c)
                if not vr.ok:
                    return _fail(f"{f}: separation ({a},{b}) fails verify: {vr.detail}")
                if c.D.cells:
                    bad = dataclasses.replace(
                        c, D=cs.CanonicalSet(c.D.space, c.D.cells[:-1])
                    )
                    if certs.verify(bad).ok:
                        return _fail(f"{f}: tampered separation ({a},{b}) still verifies")
                instances += 1
    if instances < 20:
        return _fail(f"only {instances} separation instances, need >= 20")
    return _ok(f"{instances} separations verified; single-cell tampering detected")


# -- 6: uniform approximants ---------------------------------------------------


def criterion_6() -> Tuple[bool, str]:
    for n in range(1, 4):
        f = fn.layer_indicator(omega_pow(nat(n)))
        bounds = set()
        for m in range(2, 17):
            c = certs.b14_approximant(f, m)
            if c.sup_error > Q(1, m):
                return _fail(f"n={n}, m={m}: sup_error {c.sup_error} > 1/m")
            bounds.add(c.d_bound)
        if len(bounds) != 1:
            return _fail(f"n={n}: d_bound varies across m: {sorted(bounds)}")
    return _ok("sup_error <= 1/m and d_bound constant in m for fdelta(w^n), n <= 3")


# -- 7: the indicator suite ----------------------------------------------------


def criterion_7() -> Tuple[bool, str]:
    rep = eng.classify(fn.gallery("prop53d"))
    if rep.dbsc.status != "CertifiedYes" or rep.continuous.status != "CertifiedNo":
        return _fail(f"prop53d: dbsc {rep.dbsc.status}, continuous {rep.continuous.status}")

    f_b = fn.gallery("prop53b", 5)
    rep_b = eng.classify(f_b)
    if rep_b.b12.status != "CertifiedYes" or rep_b.b14.status != "CertifiedNo":
        return _fail(f"prop53b(5): b12 {rep_b.b12.status}, b14 {rep_b.b14.status}")
    norms = eng.i_norms(f_b)
    if not isinstance(norms.i_value, eng.Diverges):
        return _fail("prop53b(5): chain family does not diverge")
    sums = {s for _, s in norms.i_value.family}
    if not {Q(n) for n in range(1, 6)} <= sums:
        return _fail(f"prop53b(5): chain sums {sorted(sums)} missing some of 1..5")

    rep_a = eng.classify(fn.gallery("prop53a", 4))
    if rep_a.b14.status != "CertifiedYes":
        return _fail(f"prop53a(4): b14 {rep_a.b14.status}, wanted CertifiedYes")
    if rep_a.dbsc.status != "PaperCited":
        return _fail(f"prop53a(4): dbsc {rep_a.dbsc.status}, wanted PaperCited")
    return _ok("prop53d / prop53b(5) / prop53a(4) verdicts all as required")


# -- 8: Boolean independence ---------------------------------------------------


def criterion_8() -> Tuple[bool, str]:
    for m in range(1, 7):
        f = fn.layer_indicator(omega_pow(nat(m + 1)))
        c = certs.independent_family(f, Q(0), Q(1), Q(1, 3), Q(2, 3), m)
        if len(c.witnesses) != 2**m:
            return _fail(f"m={m}: {len(c.witnesses)} patterns, wanted {2 ** m}")
        vr = certs.verify(c)
        if not vr.ok:
            return _fail(f"m={m}: family fails verify: {vr.detail}")
    return _ok("independent families with all 2^m intersections for m = 1..6")


# -- 9: the two chain norms ----------------------------------------------------


def criterion_9() -> Tuple[bool, str]:
    n2 = eng.i_norms(fn.layer_indicator(omega_pow(nat(2))))
    if n2.i_prime != Q(2) or n2.i_value != Q(2):
        return _fail(f"fdelta(w^2): i' = {n2.i_prime}, i = {n2.i_value}, wanted 2, 2")
    for n in range(1, 6):
        nn = eng.i_norms(fn.type0(n))
        if nn.i_prime != Q(1) or nn.i_value != Q(1):
            return _fail(f"type0({n}): i' = {nn.i_prime}, i = {nn.i_value}, wanted 1, 1")
    for m in range(1, 9):
        for eps in (Q(1, 4), Q(1, 3), Q(1, 2), Q(2, 3), Q(1), Q(3, 2)):
            out = eng.hilbert_cube_query("nonempty", m, eps=eps)
            if out["nonempty"] != (m <= int(Q(2) / eps)):
                return _fail(f"nonempty({m}, {eps}) = {out['nonempty']}")
            chk = eng.hilbert_cube_query("iprime_check", m, eps=eps)
            if not chk["holds"]:
                return _fail(f"iprime_check({m}, {eps}) violated")
    for m in range(2, 11):
        out = eng.hilbert_cube_query("chain", m)
        total = Q(out["chain_sum"])
        harmonic = 2 * sum(Q(1, i) for i in range(1, m + 1))
        if total != harmonic:
            return _fail(f"chain sum for m={m} is {total}, wanted 2*H_m = {harmonic}")
        if total <= 2:
            return _fail(f"chain sum for m={m} does not exceed 2")
    return _ok("i-norm values, cube nonemptiness, and 2*H_m chain sums all exact")


# -- 10: oracle equivalence ----------------------------------------------------


def _random_cell(top: Ordinal, rng: random.Random) -> cs.Cell:
    a = cs.random_point(top, rng)
    b = cs.random_point(top, rng)
    if cmp(a, b) > 0:
        a, b = b, a
    rlo = nat(rng.randrange(0, 3))
    rhi = None if rng.random() < 0.6 else add(rlo, nat(rng.randrange(1, 3)))
    parity = rng.choice(("any", "even", "odd"))
    return cs.Cell(a, b, rlo=rlo, rhi=rhi, parity=parity)


def criterion_10(trials: int = 1000, seed: int = 20260824) -> Tuple[bool, str]:
    rng = random.Random(seed)
    tops = [
        omega_pow(nat(2)),
        add(omega_pow(nat(2)), add(OMEGA, nat(3))),
        omega_pow(nat(3)),
        add(Ordinal(((nat(2), 2),)), nat(5)),
    ]
    for t in range(trials):
        top = rng.choice(tops)
        space = cs.SpaceTop(top)
        A = cs.make_set(space, [_random_cell(top, rng) for _ in range(rng.randrange(1, 3))])
        B = cs.make_set(space, [_random_cell(top, rng) for _ in range(rng.randrange(1, 3))])
        op = rng.choice(("union", "intersect", "diff", "complement", "derived", "closure"))
        if op == "union":
            C, want = cs.union(A, B), lambda x: cs.member(A, x) or cs.member(B, x)
        elif op == "intersect":
            C, want = cs.intersect(A, B), lambda x: cs.member(A, x) and cs.member(B, x)
        elif op == "diff":
            C, want = cs.diff(A, B), lambda x: cs.member(A, x) and not cs.member(B, x)
        elif op == "complement":
            C, want = cs.complement(A), lambda x: not cs.member(A, x)
        elif op == "derived":
            C, want = cs.derived(A), lambda x: cs.is_limit_point_oracle(A, x)
        else:
            C, want = cs.closure(A), lambda x: cs.closure_member_oracle(A, x)
        pts = cs.corner_points(C, extra=[cs.random_point(top, rng) for _ in range(3)])
        for x in pts:
            if cs.member(C, x) != want(x):
                return _fail(f"trial {t}: {op} disagrees with the oracle at {x}")
    return _ok(f"{trials} randomized set instances agree with the oracle (seed {seed})")


# -- 11: structural vs interval traces -----------------------------------------


def criterion_11() -> Tuple[bool, str]:
    for n in range(1, 5):
        F = st.build_type(0, 1, n)
        _, flat = st.flatten(F)
        tr_s = st.struct_index(F, "beta", Q(1, n))
        tr_i = eng.beta_index(flat, Q(1, n))
        if len(tr_s.stages) != len(tr_i.stages):
            return _fail(f"n={n}: stage counts differ")
        for sset, (stage, s_int) in zip(tr_s.stages, tr_i.stages):
            conv = st.sset_to_set(F, sset)
            if not cs.sets_equal(conv, s_int):
                return _fail(f"n={n} stage {stage}: structural and interval sets differ")
        kind_s, at_s = tr_s.terminal
        kind_i, at_i = tr_i.terminal
        if kind_s != kind_i or cmp(nat(at_s), at_i) != 0:
            return _fail(f"n={n}: terminals differ: {tr_s.terminal} vs {tr_i.terminal}")
    return _ok("struct_index and index_run traces identical on type-0, n = 1..4")


# -- 12: jump-sum checker ------------------------------------------------------


def criterion_12() -> Tuple[bool, str]:
    f = fn.layer_indicator(omega_pow(nat(2)))
    C = certs.witness_upper(f).bound
    seq = [fn.step_const(f.space, Q(0))]
    seq += [certs.witness_stage(f, k) for k in range(1, 11)]
    res = eng.jump_sum_check(seq, Q(1, 2), C)
    if not res.passed:
        return _fail(
            f"canonical stages violate the jump bound at point {res.witness_point}"
        )
    space = cs.SpaceTop(nat(1))
    alt = [fn.step_const(space, Q(k % 2)) for k in range(5)]
    bad = eng.jump_sum_check(alt, Q(1, 2), Q(1))
    if bad.passed:
        return _fail("0/1-alternating sequence passes with C = 1")
    return _ok(
        f"10 canonical stages pass with C = {C}; alternating sequence fails with C = 1"
    )


# -- 13: CLI determinism -------------------------------------------------------


def _run_cli(argv: List[str]) -> Tuple[int, str]:
    from . import cli

    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.cli_dispatch(argv)
    return code, buf.getvalue()


def criterion_13() -> Tuple[bool, str]:
    from unittest import mock

    args = ["classify", "--fn", "type0(2)", "--deterministic"]
    code1, out1 = _run_cli(args)
    code2, out2 = _run_cli(args)
    if code1 != 0 or code2 != 0:
        return _fail(f"classify exit codes {code1}, {code2}")
    if out1.encode() != out2.encode():
        return _fail("repeated --deterministic runs are not byte-identical")

    probes = [
        (["index", "--fn", "fdelta(w^2)", "--kind", "beta", "--delta", "1"], 0),
        (["index", "--fn", "fdelta(w^2)", "--kind", "beta"], 1),
        (["index", "--fn", "fdelta(w+", "--kind", "beta", "--delta", "1"], 2),
        (["b14check", "--fn", "fdelta(w^2)", "--stages", "17",
          "--eps", "1/2", "--C", "2"], 3),
    ]
    for argv, want in probes:
        code, _ = _run_cli(argv)
        if code != want:
            return _fail(f"{argv}: exit {code}, wanted {want}")
    broken = mock.Mock(return_value=certs.VerifyResult(False, "forced"))
    with mock.patch.object(certs, "verify", broken):
        code, _ = _run_cli(["witness", "--fn", "type0(2)", "--deterministic"])
    if code != 4:
        return _fail(f"forced verification failure gave exit {code}, wanted 4")
    return _ok("selftest deterministic and byte-stable; exit codes 0-4 exercised")


# -- runner --------------------------------------------------------------------


_CRITERIA: List[Tuple[int, str, Callable[[], Tuple[bool, str]], Optional[float]]] = [
    (1, "derived-set identification", criterion_1, 1.0),
    (2, "transfinite boundary", criterion_2, 5.0),
    (3, "containment law", criterion_3, None),
    (4, "chain-vs-witness consistency", criterion_4, None),
    (5, "separation round trip", criterion_5, None),
    (6, "uniform approximants", criterion_6, None),
    (7, "indicator suite", criterion_7, 60.0),
    (8, "Boolean independence", criterion_8, 5.0),
    (9, "chain norms and cube", criterion_9, None),
    (10, "oracle equivalence", criterion_10, 30.0),
    (11, "structural vs interval traces", criterion_11, None),
    (12, "jump-sum checker", criterion_12, 10.0),
    (13, "CLI determinism", criterion_13, None),
]


def run_all(only: Optional[str] = None) -> List[CriterionRow]:
    wanted = None
    if only:
        wanted = {int(x) for x in str(only).split(",") if x.strip()}
    rows: List[CriterionRow] = []
    for number, title, impl, limit in _CRITERIA:
        if wanted is not None and number not in wanted:
            continue
        t0 = time.perf_counter()
        try:
            passed, detail = impl()
        except Exception as e:  # a crash is a failure, not an abort
            passed, detail = False, f"{type(e).__name__}: {e}"
        dt = time.perf_counter() - t0
        if passed and limit is not None and dt > limit:
            passed, detail = False, f"{detail} — but took {dt:.1f}s > {limit:.0f}s budget"
        rows.append(CriterionRow(number, title, passed, detail, dt))
    return rows


def main() -> int:
    rows = run_all()
    width = max(len(r.title) for r in rows)
    for r in rows:
        mark = "PASS" if r.passed else "FAIL"
        print(f"[{mark}] {r.number:>2}. {r.title:<{width}}  ({r.seconds:6.2f}s)  {r.detail}")
    return 0 if all(r.passed for r in rows) else 1


if __name__ == "__main__":
    import sys

    sys.exit(main())
