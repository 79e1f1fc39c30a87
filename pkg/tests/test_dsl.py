import json
from fractions import Fraction

import pytest
from hypothesis import given

from chowcalc.algebra import format_rational
from chowcalc.dsl import (
    BundleExpr,
    DSLError,
    Query,
    VarietyDef,
    emit,
    execute,
    parse_class,
    parse_program,
)
from chowcalc.varieties import builtin_varieties, projective_bundle_over_line, projective_space

from conftest import classes
from oracles import fuzz_corpus

V = builtin_varieties()


def run(src):
    return execute(parse_program(src))


def test_parse_examples():
    p = parse_program("variety X = divisor(P 4, 5h); print chi(O on X);")
    assert isinstance(p.statements[0], VarietyDef)
    assert isinstance(p.statements[1], Query) and p.statements[1].fn == "chi"
    q = parse_program("print bezout(4,4,4);").statements[0]
    assert q.fn == "bezout" and q.text == "bezout(4,4,4)"
    y = parse_program("variety Y = projbundle(-1,0,0,1);").statements[0]
    assert isinstance(y.expr, BundleExpr) and y.expr.twists == (-1, 0, 0, 1)


def test_execute_examples():
    (r,) = run("print integrate(P 3, (4h)^3);")
    assert r.value == "64" and r.kind == "scalar"
    assert run("print d(2, 4, 3);")[0].value == "2"
    assert run("print chi(O on K3quartic);")[0].value == "2"
    assert run("variety X = divisor(P 4, 5h); print chi(O on X);")[0].value == "0"


def test_json_rendering():
    out = emit(run("print bezout(4,4,4);"), "json")
    assert out == b'{"query":"bezout(4,4,4)","value":"64","kind":"scalar"}\n'


def test_rational_rendering():
    (r,) = run("print ch(T on P 3);")
    assert r.kind == "class"
    assert r.value.endswith("2/3*h^3")
    assert format_rational(Fraction(2, 3)) == "2/3"


def test_empty_program():
    assert run("") == []
    assert emit([], "text") == b"" and emit([], "json") == b""
    assert run("# only a comment\n") == []


def test_queries_cover_every_function():
    src = """
    sheaf E on K3quartic { rank 2, chern 1 - h + 3/4*h^2 };
    k3lattice L { gram [[4]], omega [1] };
    print mukai(E, L);
    print pairing(E, E);
    print admissible(2, -4, 4, 3);
    print odp(1);
    print ledger(2, 0, 4, []);
    print ledger(2, 1, 4, [(1,1),(1,2)]);
    print hilb(1, quintic);
    print hilb(2, 4);
    print td(P 2);
    print examples();
    """
    rs = run(src)
    assert [r.error for r in rs] == [None] * len(rs)
    values = [r.value for r in rs]
    assert values[0] == "(2, (-1), 1)"
    assert values[1] == "0"
    assert values[2] == "admissible=true very_admissible=false gcd=1"
    assert values[3] == "-2"
    assert values[4].startswith("consistent")
    assert values[5].startswith("infeasible")
    assert values[6] == "200"
    assert values[7] == "18"
    assert values[8] == "1 + 3/2*h + h^2"
    assert rs[-1].provenance == "published"


def test_failures_do_not_abort():
    rs = run("print integrate(P 3, h^3); print integrate(P 5, h); print d(2, 3, 0); print bezout(1,1,1);")
    assert [r.kind for r in rs] == ["scalar", "scalar", "error", "scalar"]
    assert "line 1" in rs[2].error
    assert emit(rs, "text").count(b"ERROR") == 1


def test_json_lines_parse():
    rs = run("print bezout(2,3,4); print d(2, 3, 0);")
    lines = emit(rs, "json").decode().splitlines()
    objs = [json.loads(line) for line in lines]
    assert objs[0] == {"query": "bezout(2,3,4)", "value": "24", "kind": "scalar"}
    assert objs[1]["kind"] == "error" and "error" in objs[1]


@pytest.mark.parametrize(
    "src,line,col",
    [
        ("print bez(1);", 1, 7),
        ("print bezout(1,1);", 1, 17),
        ("variety X = P 3;\nvariety X = P 2;", 2, 9),
        ("variety P3 = P 3;", 1, 9),
        ("print chi(O on Nope);", 1, 16),
        ("print integrate(P 3, h $ h);", 1, 24),
        ("print d(2, 4, 3)", 1, 17),
    ],
)
def test_positioned_errors(src, line, col):
    with pytest.raises(DSLError) as info:
        parse_program(src)
    assert (info.value.line, info.value.col) == (line, col)


def test_unknown_generator_is_positioned_at_evaluation():
    d, r = run("sheaf E on P3 { rank 2, chern 1 + q };\nprint chi(E);")
    assert d.error == "line 1, column 35: unknown generator 'q' on P3"
    assert r.kind == "error" and r.error.startswith("line 2, column 7")
    (r,) = run("print integrate(P 3, h + q);")
    assert r.kind == "error" and r.error.startswith("line 1, column")


def test_depth_and_size_guards():
    with pytest.raises(DSLError):
        parse_program("print integrate(P 3, " + "(" * 500 + "h" + ")" * 500 + ");")
    with pytest.raises(DSLError):
        parse_program("print d(" + "9" * 2000 + ", 1, 1);")
    # nilpotent, so large exponents are harmless
    assert run("print integrate(P 3, h^100000);")[0].value == "0"
    (r,) = run("print integrate(P 3, (2^999)^999);")
    assert r.kind == "error"


def test_determinism():
    src = "print ch(T on P 3); print examples(); print hilb(3, -7);"
    assert emit(run(src), "text") == emit(run(src), "text")
    assert emit(run(src), "json") == emit(run(src), "json")


_ROUNDTRIP = [projective_space(3), V["P1xP1xP2"], projective_bundle_over_line((-1, 0, 0, 1)), V["X223"], V["X1fibre"]]


@pytest.mark.parametrize("pres", _ROUNDTRIP, ids=lambda p: p.name)
def test_class_roundtrip(pres):
    @given(classes(pres))
    def check(x):
        assert parse_class(str(x), pres) == x

    check()


def test_fuzz_corpus_gives_positioned_diagnostics():
    rejected, accepted = fuzz_corpus(1000, seed=0, parse=parse_program)
    assert len(rejected) == 1000
    for src, exc in rejected:
        assert isinstance(exc, DSLError), (src, exc)
        lines = src.split("\n")
        assert 1 <= exc.line <= len(lines)
        assert 1 <= exc.col <= len(lines[exc.line - 1]) + 1
    for src in accepted:
        results = execute(parse_program(src))
        emit(results, "text")
        emit(results, "json")
