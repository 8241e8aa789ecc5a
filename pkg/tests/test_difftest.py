import random

from hypothesis import given, settings
from hypothesis import strategies as st
from support import example_text, program, run

from cube.difftest import (
    TRUNCATED, GenConfig, engine_vs_oracle, gen_goal, gen_program, mismatch, oracle_eval,
    sld_cut_eval,
)
from cube.difftest.cutcorpus import goals, names, source, sld_transcript
from cube.outcome import EXHAUSTED, FAIL
from cube.setting import Setting, unify
from cube.syntax import format_solution, parse_prolog, parse_query, parse_term
from cube.term import Pair, Var


def oracle(goal, prog=None, depth=10, s=None):
    prog = prog if prog is not None else program()
    q = parse_query(goal)
    r = oracle_eval(q.term, s or Setting(q.nvars), prog, depth)
    return [format_solution(x, q.names) for x in r.settings()], r.final_outcome()


def sld(db, goal, depth=50):
    q = parse_query(goal)
    r = sld_cut_eval(parse_prolog(db), q.term, depth, nvars=q.nvars)
    return [format_solution(x, q.names) for x in r.settings()], r.final_outcome()


# -- oracle ----------------------------------------------------------------

def test_oracle_member_from_a_start_setting():
    q = parse_query("member(1.X, Y)")
    s0 = unify(Setting(q.nvars), Var(q.names["X"]), parse_term("[2]"))
    r = oracle_eval(q.term, s0, program(), 10)
    assert [format_solution(s, {"Y": q.names["Y"]}) for s in r.settings()] == ["Y = 1", "Y = 2"]
    assert r.final_outcome() is FAIL


def test_oracle_small_examples():
    assert oracle("true") == (["true"], FAIL)
    assert oracle("(X=1;X=2) until X=1") == (["X = 1"], FAIL)
    assert oracle("(X=1;X=2) unless X=2") == (["X = 1"], FAIL)


def test_oracle_depth_bound():
    prog = program("loop :: X <- loop(X).")
    assert oracle("loop(1)", prog, depth=5) == ([], EXHAUSTED)


def test_oracle_cap_truncates():
    prog = program(example_text("int.cube"))
    q = parse_query("int(X)")
    r = oracle_eval(q.term, Setting(q.nvars), prog, 50, cap=3)
    assert len(r.solutions) == 3 and r.final is TRUNCATED


# -- sld -------------------------------------------------------------------

def test_sld_cut():
    assert sld("p(1) :- !.  p(2).", "p(X)") == (["X = 1"], FAIL)
    assert sld("q(1).  q(2).", "q(X)") == (["X = 1", "X = 2"], FAIL)


def test_sld_cut_inside_a_disjunction_prunes_the_clause():
    db = "s(X) :- (X = 1 ; X = 2), (!, true ; true).  s(3)."
    assert sld(db, "s(X)") == (["X = 1"], FAIL)


def test_sld_until_definition_matches_native_until():
    db = "until(S, C) :- call(S), (call(C), ! ; true).  call(G) :- G."
    goal = "(X=1;X=2;X=3) until X=2"
    q = parse_query(goal)
    prolog = sld_cut_eval(parse_prolog(db), q.term, 50, nvars=q.nvars)
    native, final, _ = run(goal)
    assert mismatch(native, final, prolog.settings(), prolog.final_outcome(), [0], 1) is None


def test_sld_depth_bound():
    assert sld("l :- l.", "l", depth=20) == ([], EXHAUSTED)


# -- generator -------------------------------------------------------------

def test_generation_is_deterministic():
    assert gen_program(GenConfig(1)).source == gen_program(GenConfig(1)).source
    assert gen_program(GenConfig(1)).source != gen_program(GenConfig(2)).source


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10**9), st.booleans(), st.booleans())
def test_generated_programs_load(seed, exceptions, metacall):
    g = gen_program(GenConfig(seed, exceptions=exceptions, metacall=metacall))
    assert 2 <= len(g.procedures) <= 4
    assert g.program.procedures.keys() == {p.name for p in g.procedures}
    assert g.queries
    procs = [(p.name, len(p.clauses[0].head_args)) for p in g.procedures]
    parse_query(gen_goal(random.Random(seed), procs, GenConfig(seed)))


def test_engine_agrees_with_oracle_on_a_few_seeds():
    for seed in range(2000, 2050):
        assert engine_vs_oracle(seed) == [], seed


# -- comparison ------------------------------------------------------------

def settle(text):
    q = parse_query(text)
    s = Setting(q.nvars)
    for a, b in _goals(q.term):
        s = unify(s, a, b)
    return s


def _goals(t):
    while isinstance(t, Pair):
        yield t.left.args
        t = t.right
    yield t.args


def test_fresh_variables_may_be_renamed():
    a = settle("X = X, Y = Y, X = f(A, B)")
    b = settle("X = X, Y = Y, Z = Z, X = f(A, B)")
    assert a.deref(Var(0)) != b.deref(Var(0))
    assert mismatch([a], FAIL, [b], FAIL, [0, 1], 2) is None


def test_fresh_variables_must_correspond_one_to_one():
    a = settle("X = X, Y = Y, X = f(A, A)")
    b = settle("X = X, Y = Y, X = f(A, B)")
    assert mismatch([a], FAIL, [b], FAIL, [0, 1], 2) is not None


def test_query_variables_must_match_exactly():
    a = settle("X = Y")
    b = settle("X = X, Y = Y")
    assert mismatch([a], FAIL, [b], FAIL, [0, 1], 2) is not None


def test_finals_and_prefixes():
    s = Setting(1)
    assert mismatch([s], FAIL, [s], EXHAUSTED, [0], 1) is not None
    assert mismatch([s], FAIL, [s, s], FAIL, [0], 1) is not None
    assert mismatch([s], TRUNCATED, [s, s], FAIL, [0], 1) is None
    assert mismatch([s], None, [s, s], FAIL, [0], 1) is None


# -- corpus ----------------------------------------------------------------

def test_corpus_is_present():
    assert len(names()) >= 10
    for name in names():
        assert goals(source(name))
        assert sld_transcript(name).startswith("?- ")
