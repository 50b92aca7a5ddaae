"""Command-line front end.

Parses the small function DSL, dispatches to the engine / certificate
modules, and emits a deterministic report: JSON is the machine contract
and the text rendering is derived from the same JSON document.

Exit codes: 0 success, 1 usage error, 2 DSL or ordinal parse error,
3 budget exceeded, 4 verification failure (a produced certificate failed
its own verifier — always a bug, reported loudly).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from . import cells as cs
from . import certs
from . import engine as eng
from . import functions as fn
from . import structure as st
from .ordinals import OMEGA, ZERO, Ordinal, ParseError, nat, omega_pow, parse_ordinal

Q = Fraction

VERSION = "0.1.0"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3
EXIT_VERIFY = 4


class DslError(Exception):
    pass


# ---------------------------------------------------------------------------
# function DSL
# ---------------------------------------------------------------------------


def _split_call(text: str) -> Tuple[str, str]:
    text = text.strip()
    i = text.find("(")
    if i <= 0 or not text.endswith(")"):
        raise DslError(f"expected name(...), got {text!r}")
    name = text[:i].strip()
    if not name.replace("_", "").isalnum():
        raise DslError(f"bad function name {name!r}")
    return name, text[i + 1 : -1]


def _split_args(body: str) -> List[str]:
    """Split at top-level commas, respecting (), []."""
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
            if depth < 0:
                raise DslError(f"unbalanced brackets in {body!r}")
        if ch == "," and depth == 0:
            out.append("".join(cur).strip())
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise DslError(f"unbalanced brackets in {body!r}")
    last = "".join(cur).strip()
    if last:
        out.append(last)
    return out


def _split_options(body: str) -> Tuple[str, Dict[str, str]]:
    """Separate a trailing `; key=value; ...` option list."""
    depth = 0
    for i, ch in enumerate(body):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == ";" and depth == 0:
            opts: Dict[str, str] = {}
            for item in body[i + 1 :].split(";"):
                if not item.strip():
                    continue
                if "=" not in item:
                    raise DslError(f"options look like key=value, got {item!r}")
                k, v = item.split("=", 1)
                opts[k.strip()] = v.strip()
            return body[:i].strip(), opts
    return body.strip(), {}


def _parse_fraction(text: str) -> Q:
    try:
        return Q(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise DslError(f"bad rational {text!r}: {e}") from None


def _parse_int(text: str) -> int:
    try:
        return int(text.strip())
    except ValueError:
        raise DslError(f"bad integer {text!r}") from None


FnValue = Union[fn.SimpleFn, st.StructFn]


def parse_fn(text: str, parity: str = "even") -> FnValue:
    """The --fn DSL: fdelta(w^2; parity=even), type0(3), gallery(prop53b, 4),
    scale(1/3, EXPR), patch([0,w] -> EXPR, ...), type(n=2, m=8, k=2),
    trunc(EXPR, k), flat(EXPR)."""
    name, body = _split_call(text)
    body, opts = _split_options(body)
    parity = opts.pop("parity", parity)
    if parity not in ("even", "odd"):
        raise DslError(f"parity must be even or odd, got {parity!r}")
    if opts:
        raise DslError(f"unknown options {sorted(opts)}")
    args = _split_args(body)
    try:
        if name in ("fdelta", "f_delta"):
            if len(args) != 1:
                raise DslError("fdelta takes one ordinal")
            return fn.layer_indicator(parse_ordinal(args[0]), parity=parity)
        if name == "type0":
            if len(args) != 1:
                raise DslError("type0 takes one integer")
            return fn.type0(_parse_int(args[0]), parity=parity)
        if name == "gallery":
            if not args:
                raise DslError("gallery needs a name")
            gname = args[0].strip().strip("\"'")
            rest: List[object] = []
            for a in args[1:]:
                rest.append(parse_ordinal(a) if "w" in a else _parse_int(a))
            return fn.gallery(gname, *rest, parity=parity)
        if name == "scale":
            if len(args) != 2:
                raise DslError("scale takes a rational and a function")
            g = parse_fn(args[1], parity)
            if not isinstance(g, fn.SimpleFn):
                raise DslError("scale applies to interval-model functions")
            return fn.scale(_parse_fraction(args[0]), g)
        if name == "patch":
            branches = []
            top = ZERO
            for a in args:
                if "->" not in a:
                    raise DslError(f"patch entries look like [a,b] -> fn, got {a!r}")
                iv, sub_expr = a.split("->", 1)
                iv = iv.strip()
                if not (iv.startswith("[") and iv.endswith("]")):
                    raise DslError(f"bad interval {iv!r}")
                lo_s, hi_s = _split_args(iv[1:-1])
                lo, hi = parse_ordinal(lo_s), parse_ordinal(hi_s)
                g = parse_fn(sub_expr, parity)
                if not isinstance(g, fn.SimpleFn):
                    raise DslError("patch branches must be interval-model functions")
                branches.append((lo, hi, g))
                from .ordinals import cmp as ocmp

                if ocmp(hi, top) > 0:
                    top = hi
            return fn.patch(cs.SpaceTop(top), branches, label=text)
        if name == "type":
            kw = {"m": "1", "k": "2", "n": "0"}
            for a in args:
                if "=" not in a:
                    raise DslError(f"type takes n=, m=, k=; got {a!r}")
                key, val = a.split("=", 1)
                key = key.strip()
                if key not in kw:
                    raise DslError(f"unknown type parameter {key!r}")
                kw[key] = val.strip()
            return st.build_type(
                _parse_int(kw["n"]), _parse_int(kw["m"]), _parse_int(kw["k"]),
                parity=parity,
            )
        if name == "trunc":
            if len(args) != 2:
                raise DslError("trunc takes a structural function and a level")
            g = parse_fn(args[0], parity)
            if not isinstance(g, st.StructFn):
                raise DslError("trunc applies to structural functions")
            return st.truncate(g, _parse_int(args[1]))
        if name == "flat":
            if len(args) != 1:
                raise DslError("flat takes a structural function")
            g = parse_fn(args[0], parity)
            if not isinstance(g, st.StructFn):
                raise DslError("flat applies to structural functions")
            _, out = st.flatten(g)
            return out
    except (fn.FnError, st.StructError, cs.SetError) as e:
        raise DslError(str(e)) from e
    raise DslError(f"unknown function form {name!r}")


def _need_simple(f: FnValue) -> fn.SimpleFn:
    if isinstance(f, st.StructFn):
        raise DslError(
            "this operation needs an interval-model function; wrap structural "
            "functions in flat(trunc(..., k))"
        )
    return f


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _q(v) -> Optional[str]:
    return None if v is None else str(v)


def trace_json(tr: eng.IndexTrace) -> dict:
    return {
        "kind": "IndexTrace",
        "index": tr.kind.name,
        "params": {
            "delta": _q(tr.kind.delta),
            "a": _q(tr.kind.a),
            "b": _q(tr.kind.b),
            "deltas": [str(d) for d in tr.kind.deltas],
        },
        "stages": [[str(stage), str(s)] for stage, s in tr.stages],
        "terminal": [tr.terminal[0], str(tr.terminal[1])],
    }


def struct_trace_json(tr: st.StructTrace) -> dict:
    return {
        "kind": "StructTrace",
        "index": tr.kind,
        "deltas": [str(d) for d in tr.deltas],
        "stage_count": len(tr.stages),
        "terminal": [tr.terminal[0], tr.terminal[1]],
    }


def _norms_json(n: eng.INorms) -> dict:
    def one(v):
        return str(v) if isinstance(v, eng.Diverges) else _q(v)

    return {"i_prime": one(n.i_prime), "i_value": one(n.i_value)}


def classify_json(r: eng.ClassReport) -> dict:
    return {
        "verdicts": {
            name: {"status": getattr(r, name).status, "ref": getattr(r, name).ref}
            for name in ("continuous", "dbsc", "b14", "b12", "b1")
        },
        "beta_sup": r.beta_sup,
        "i_prime": str(r.i_prime),
        "i_value": str(r.i_value),
        "d_norm_bounds": [_q(r.d_norm_bounds[0]), _q(r.d_norm_bounds[1])],
    }


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------


class Report:
    def __init__(self, query: str, function: str) -> None:
        self.doc: dict = {
            "version": VERSION,
            "query": query,
            "function": function,
            "results": [],
            "certificates": {},
            "timing_ms": 0,
        }

    def add(self, op: str, params: dict, outcome, cert_ids: List[str] = []) -> None:
        self.doc["results"].append(
            {"op": op, "params": params, "outcome": outcome, "certificates": list(cert_ids)}
        )

    def cert(self, cid: str, payload: dict) -> str:
        self.doc["certificates"][cid] = payload
        return cid


def _emit(report: Report, args, t0: float) -> None:
    report.doc["timing_ms"] = 0 if args.deterministic else int((time.time() - t0) * 1000)
    if args.text:
        _render_text(report.doc)
    else:
        print(json.dumps(report.doc, indent=2))


def _render_text(doc: dict) -> None:
    print(f"bairelab {doc['version']} — {doc['query']}")
    print(f"function: {doc['function']}")
    for res in doc["results"]:
        print(f"\n[{res['op']}] params={res['params']}")
        out = res["outcome"]
        if isinstance(out, dict):
            for k, v in out.items():
                print(f"  {k}: {v}")
        else:
            print(f"  {out}")
        if res["certificates"]:
            print(f"  certificates: {', '.join(res['certificates'])}")
    if doc["certificates"]:
        print(f"\n{len(doc['certificates'])} certificate(s) embedded")
    print(f"timing_ms: {doc['timing_ms']}")


def _checked(report: Report, cid: str, cert) -> str:
    """Embed a certificate after re-verification; a failure is a bug."""
    vr = certs.verify(cert)
    if not vr.ok:
        raise _VerifyFailure(f"certificate {cid} failed verification: {vr.detail}")
    return report.cert(cid, certs.cert_to_json(cert))


class _VerifyFailure(Exception):
    pass


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def _cmd_classify(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    r = eng.classify(f, budget=_budget(args))
    for cid, payload in r.certificates.items():
        report.cert(cid, payload)
    report.add("classify", {"budget": str(_budget(args))}, classify_json(r),
               list(r.certificates.keys()))


def _cmd_index(args, report: Report) -> None:
    f = parse_fn(args.fn, args.parity)
    if args.kind == "beta":
        if args.delta is None:
            raise UsageError("index --kind beta needs --delta")
        params = {"kind": "beta", "delta": args.delta}
        if isinstance(f, st.StructFn):
            tr = st.struct_index(f, "beta", _parse_fraction(args.delta))
            report.add("struct_index", params, struct_trace_json(tr))
            return
        kind = eng.beta_kind(_parse_fraction(args.delta))
    elif args.kind == "alpha":
        if args.a is None or args.b is None:
            raise UsageError("index --kind alpha needs --a and --b")
        params = {"kind": "alpha", "a": args.a, "b": args.b}
        if isinstance(f, st.StructFn):
            raise UsageError("alpha index runs on the interval model only")
        kind = eng.alpha_kind(_parse_fraction(args.a), _parse_fraction(args.b))
    elif args.kind == "gen":
        if not args.deltas:
            raise UsageError("index --kind gen needs --deltas d1,d2,...")
        ds = [_parse_fraction(d) for d in args.deltas.split(",")]
        params = {"kind": "gen", "deltas": args.deltas}
        if isinstance(f, st.StructFn):
            tr = st.struct_index(f, "gen", ds)
            report.add("struct_index", params, struct_trace_json(tr))
            return
        kind = eng.gen_kind(ds)
    else:
        raise UsageError(f"unknown index kind {args.kind!r}")
    tr = eng.index_run(f, kind, budget=_budget(args))
    report.add("index", params, trace_json(tr))


def _cmd_norms(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    n = eng.i_norms(f, budget=_budget(args))
    bs = eng.beta_sup(f, budget=_budget(args))
    out = _norms_json(n)
    out["beta_sup"] = str(bs.value) if bs.exact else f">= {bs.value}"
    out["sup_norm"] = str(f.sup_norm())
    report.add("norms", {}, out)


def _cmd_witness(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    c = certs.witness_upper(f)
    cid = _checked(report, "witness_upper", c)
    report.add(
        "witness",
        {},
        {"bound": _q(c.bound), "rule": c.rule, "argmax": _q(c.argmax), "notes": c.notes},
        [cid],
    )


def _cmd_separate(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    c = certs.separate_by_D(f, _parse_fraction(args.a), _parse_fraction(args.b))
    cid = _checked(report, "separation", c)
    report.add(
        "separate",
        {"a": args.a, "b": args.b},
        {"alpha": c.alpha, "pieces": len(c.pieces)},
        [cid],
    )


def _cmd_approx(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    c = certs.b14_approximant(f, args.m)
    cid = _checked(report, "approximant", c)
    report.add(
        "approx",
        {"m": args.m},
        {"sup_error": str(c.sup_error), "d_bound": _q(c.d_bound)},
        [cid],
    )


def _cmd_psdecomp(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    c = certs.ps_decomposition(f, args.n)
    cid = _checked(report, "ps_decomposition", c)
    report.add(
        "psdecomp",
        {"n": args.n},
        {"stage_sizes": [len(s) for s in c.sets], "rule": c.rule},
        [cid],
    )


def _cmd_independence(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    c = certs.independent_family(
        f, _parse_fraction(args.a), _parse_fraction(args.b),
        _parse_fraction(args.a1), _parse_fraction(args.b1), args.m,
    )
    cid = _checked(report, "independent_family", c)
    report.add(
        "independence",
        {"a": args.a, "b": args.b, "a1": args.a1, "b1": args.b1, "m": args.m},
        {"stages": list(c.stages), "patterns": len(c.witnesses)},
        [cid],
    )


def _cmd_b14check(args, report: Report) -> None:
    f = _need_simple(parse_fn(args.fn, args.parity))
    seq = [fn.step_const(f.space, Q(0))]
    seq += [certs.witness_stage(f, k) for k in range(1, args.stages + 1)]
    res = eng.jump_sum_check(seq, _parse_fraction(args.eps), _parse_fraction(args.C))
    report.add(
        "b14check",
        {"stages": args.stages, "eps": args.eps, "C": args.C},
        {
            "passed": res.passed,
            "worst_sum": str(res.worst_sum),
            "witness_subsequence": list(res.witness_subsequence),
            "witness_point": _q(res.witness_point),
        },
    )


def _cmd_prop85(args, report: Report) -> None:
    out = eng.hilbert_cube_query(args.mode, args.m, eps=args.eps)
    report.add("prop85", {"mode": args.mode, "m": args.m, "eps": args.eps}, out)


def _cmd_gallery(args, report: Report) -> None:
    if args.name:
        extra = [int(a) for a in (args.args or "").split(",") if a.strip()]
        f = fn.gallery(args.name, *extra, parity=args.parity)
        report.add(
            "gallery",
            {"name": args.name, "args": extra},
            {
                "label": str(f),
                "space": str(f.space),
                "values": [str(v) for v in f.values()],
                "sup_norm": str(f.sup_norm()),
                "blocks": len(f.blocks or ()),
            },
        )
        return
    entries = []
    for name in fn.GALLERY:
        entries.append({"name": name})
    report.add("gallery", {}, {"entries": entries})


def _cmd_selftest(args, report: Report) -> None:
    from . import acceptance

    rows = acceptance.run_all(only=args.criteria)
    all_ok = all(r.passed for r in rows)
    report.add(
        "selftest",
        {"criteria": args.criteria or "all"},
        {
            "passed": all_ok,
            "matrix": [
                {"criterion": r.number, "title": r.title, "passed": r.passed,
                 "detail": r.detail}
                for r in rows
            ],
        },
    )
    if not all_ok:
        raise _VerifyFailure("acceptance criteria failed")


class UsageError(Exception):
    pass


def _budget(args) -> Ordinal:
    if not getattr(args, "budget", None):
        return eng.DEFAULT_BUDGET
    return parse_ordinal(args.budget)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # map argparse errors to exit code 1
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="bairelab", description=__doc__, add_help=True)
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, needs_fn=True):
        if needs_fn:
            sp.add_argument("--fn", required=True, help="function DSL expression")
        sp.add_argument("--json", action="store_true", default=True)
        sp.add_argument("--text", action="store_true")
        sp.add_argument("--budget", default=None, help="ordinal stage budget")
        sp.add_argument("--seed", type=int, default=7)
        sp.add_argument("--parity", choices=("even", "odd"), default="even")
        sp.add_argument("--deterministic", action="store_true")

    sp = sub.add_parser("classify"); common(sp); sp.set_defaults(run=_cmd_classify)
    sp = sub.add_parser("index"); common(sp)
    sp.add_argument("--kind", required=True, choices=("beta", "alpha", "gen"))
    sp.add_argument("--delta"); sp.add_argument("--a"); sp.add_argument("--b")
    sp.add_argument("--deltas")
    sp.set_defaults(run=_cmd_index)
    sp = sub.add_parser("norms"); common(sp); sp.set_defaults(run=_cmd_norms)
    sp = sub.add_parser("witness"); common(sp); sp.set_defaults(run=_cmd_witness)
    sp = sub.add_parser("separate"); common(sp)
    sp.add_argument("--a", required=True); sp.add_argument("--b", required=True)
    sp.set_defaults(run=_cmd_separate)
    sp = sub.add_parser("approx"); common(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(run=_cmd_approx)
    sp = sub.add_parser("psdecomp"); common(sp)
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(run=_cmd_psdecomp)
    sp = sub.add_parser("independence"); common(sp)
    sp.add_argument("--a", required=True); sp.add_argument("--b", required=True)
    sp.add_argument("--a1", required=True); sp.add_argument("--b1", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(run=_cmd_independence)
    sp = sub.add_parser("b14check"); common(sp)
    sp.add_argument("--stages", type=int, default=10)
    sp.add_argument("--eps", required=True); sp.add_argument("--C", required=True)
    sp.set_defaults(run=_cmd_b14check)
    sp = sub.add_parser("prop85"); common(sp, needs_fn=False)
    sp.add_argument("--mode", required=True, choices=("nonempty", "chain", "iprime_check"))
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--eps", default=None)
    sp.set_defaults(run=_cmd_prop85)
    sp = sub.add_parser("gallery"); common(sp, needs_fn=False)
    sp.add_argument("--name"); sp.add_argument("--args")
    sp.set_defaults(run=_cmd_gallery)
    sp = sub.add_parser("selftest"); common(sp, needs_fn=False)
    sp.add_argument("--criteria", default=None, help="comma-separated criterion numbers")
    sp.set_defaults(run=_cmd_selftest)
    return p


def cli_dispatch(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    t0 = time.time()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    query = "bairelab " + " ".join(argv)
    fn_desc = getattr(args, "fn", None) or "-"
    report = Report(query, fn_desc)
    try:
        args.run(args, report)
    except (DslError, ParseError) as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (eng.BadParams, fn.BadParams, certs.BadParams,
            st.BadParams, UsageError) as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (eng.TooLong, certs.BudgetExceeded, st.BudgetExceeded, OverflowError) as e:
        print(f"budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except _VerifyFailure as e:
        # still emit the report so the failure is inspectable
        _emit(report, args, t0)
        print(f"verification failure: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (certs.CertError, st.StructError, fn.FnError, cs.SetError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, args, t0)
    return EXIT_OK


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
