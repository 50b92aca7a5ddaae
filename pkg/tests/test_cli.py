import io
import json
from contextlib import redirect_stdout
from fractions import Fraction as Q

import pytest

from bairelab import cli
from bairelab import functions as fn
from bairelab import structure as st
from bairelab.ordinals import omega_pow, nat


def run(argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli.cli_dispatch(argv)
    return code, buf.getvalue()


def run_json(argv):
    code, out = run(argv)
    assert code == 0, out
    return json.loads(out)


# -- DSL ---------------------------------------------------------------------


def test_parse_fn_basic_forms():
    f = cli.parse_fn("fdelta(w^2)")
    assert isinstance(f, fn.SimpleFn)
    assert f.space.top == omega_pow(nat(2))
    assert isinstance(cli.parse_fn("type0(3)"), fn.SimpleFn)
    assert isinstance(cli.parse_fn("gallery(prop53b, 4)"), fn.SimpleFn)
    g = cli.parse_fn("scale(1/3, type0(2))")
    assert max(g.values()) == Q(1, 6)


def test_parse_fn_parity_option():
    even = cli.parse_fn("fdelta(w; parity=even)")
    odd = cli.parse_fn("fdelta(w; parity=odd)")
    assert fn.eval_fn(even, nat(1)) != fn.eval_fn(odd, nat(1))
    with pytest.raises(cli.DslError):
        cli.parse_fn("fdelta(w; parity=sideways)")


def test_parse_fn_patch():
    g = cli.parse_fn("patch([0,w] -> fdelta(w), [w+1,w^2] -> scale(1/2, fdelta(w^2)))")
    assert isinstance(g, fn.SimpleFn)
    assert g.space.top == omega_pow(nat(2))


def test_parse_fn_structural_forms():
    F = cli.parse_fn("type(n=1, m=2, k=2)")
    assert isinstance(F, st.StructFn)
    T = cli.parse_fn("trunc(type(n=1, m=2, k=2), 2)")
    assert isinstance(T, st.StructFn)
    flat = cli.parse_fn("flat(trunc(type(n=0, m=1, k=2), 2))")
    assert isinstance(flat, fn.SimpleFn)


@pytest.mark.parametrize(
    "bad",
    [
        "fdelta(w+",
        "mystery(3)",
        "scale(1/0, type0(2))",
        "patch([0,w] fdelta(w))",
        "type(z=3)",
        "fdelta(w; parity=even; hue=red)",
        "flat(type0(2))",
    ],
)
def test_parse_fn_rejects(bad):
    from bairelab.ordinals import ParseError

    with pytest.raises((cli.DslError, ParseError)):
        cli.parse_fn(bad)


# -- dispatch and report shape -----------------------------------------------


def test_report_schema():
    doc = run_json(["index", "--fn", "fdelta(w^2)", "--kind", "beta",
                    "--delta", "1", "--deterministic"])
    assert set(doc) == {"version", "query", "function", "results",
                       "certificates", "timing_ms"}
    res = doc["results"][0]
    assert set(res) == {"op", "params", "outcome", "certificates"}
    assert res["outcome"]["terminal"] == ["empty_at", "3"]
    assert doc["timing_ms"] == 0


def test_certificates_embedded_and_referenced():
    doc = run_json(["witness", "--fn", "type0(2)", "--deterministic"])
    res = doc["results"][0]
    assert res["certificates"] == ["witness_upper"]
    assert "witness_upper" in doc["certificates"]
    assert doc["certificates"]["witness_upper"]["kind"] == "WitnessUpper"


def test_deterministic_runs_are_byte_identical():
    argv = ["norms", "--fn", "type0(3)", "--deterministic"]
    a = run(argv)
    b = run(argv)
    assert a == b


def test_text_mode_renders():
    code, out = run(["classify", "--fn", "type0(2)", "--deterministic", "--text"])
    assert code == 0
    assert "verdicts" in out or "continuous" in out


def test_exit_codes():
    assert run(["index", "--fn", "fdelta(w^2)", "--kind", "beta", "--delta", "1"])[0] == 0
    assert run(["index", "--fn", "fdelta(w^2)", "--kind", "beta"])[0] == 1
    assert run(["index", "--fn", "fdelta(w+", "--kind", "beta", "--delta", "1"])[0] == 2
    assert run(["separate", "--fn", "prop53c_bad(", "--a", "0", "--b", "1"])[0] == 2
    assert run(["b14check", "--fn", "fdelta(w^2)", "--stages", "17",
                "--eps", "1/2", "--C", "2"])[0] == 3
    assert run(["nonsense"])[0] == 1


def test_gallery_listing_and_entry():
    doc = run_json(["gallery", "--deterministic"])
    names = {e["name"] for e in doc["results"][0]["outcome"]["entries"]}
    assert {"f_delta", "type0", "prop53b", "prop53c"} <= names
    doc = run_json(["gallery", "--name", "type0", "--args", "3", "--deterministic"])
    out = doc["results"][0]["outcome"]
    assert out["sup_norm"] == "1/3"


def test_prop85_subcommand():
    doc = run_json(["prop85", "--mode", "nonempty", "--m", "4", "--eps", "1/2",
                    "--deterministic"])
    assert doc["results"][0]["outcome"]["nonempty"] is True


def test_classify_subcommand_matches_engine():
    import bairelab.engine as eng

    doc = run_json(["classify", "--fn", "fdelta(w^w)", "--deterministic"])
    verdicts = doc["results"][0]["outcome"]["verdicts"]
    rep = eng.classify(fn.gallery("prop53c"))
    assert verdicts["b12"]["status"] == rep.b12.status == "CertifiedNo"
