import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from support import example, example_text, program, run, shown

from cube.difftest.gen import GenConfig, gen_program
from cube.engine import (
    EvalConfig, Evaluator, FreeVarPolicy, Program, close_def, compose_after, define_procedure,
    translate_clause,
)
from cube.errors import LoadError
from cube.outcome import EXHAUSTED, FAIL, Raise, prefix_le, take
from cube.setting import Setting, entails
from cube.syntax import parse_program, parse_prolog, parse_query, parse_term, print_term
from cube.term import Abs, App, Var, alpha_equal, atom, beta_apply, make_list


def error_of(goal, prog=None, **kw):
    _, final, _ = run(goal, prog, **kw)
    assert isinstance(final, Raise), final
    return print_term(final.payload.term, final.payload.setting)


def closed(src):
    (p,) = parse_program(src)
    return define_procedure(p.name, p.clauses).closed


def same_shape(t, text):
    """Alpha-compare ``t`` against ``λA. text`` with ``A`` as the bound var."""
    q = parse_query(text)
    return alpha_equal(t, Abs(q.names["A"], q.term))


# -- translation -----------------------------------------------------------

def test_identity_partial_definition_is_a_unit():
    (p,) = parse_program("p :: X, a <- r(X).")
    pd = translate_clause(p.clauses[0])
    ident = Abs(90, Abs(91, Var(91)))
    assert alpha_equal(compose_after(ident, pd), pd)
    assert alpha_equal(compose_after(pd, ident), pd)


def test_closing_the_identity_always_fails():
    d = close_def(Abs(90, Abs(91, Var(91))))
    assert alpha_equal(d.closed, Abs(0, App("fail")))


def test_fact_closes_to_head_unification():
    assert same_shape(closed("p."), "A = []")


def test_int_closes_to_a_disjunction():
    t = closed("int :: 0 .. s(X) <- int(X).")
    assert isinstance(t, Abs)
    first, second = t.body.args
    assert t.body.name == ";"
    assert first == App("=", (Var(t.bound), parse_term("[0]")))
    assert isinstance(second, Abs)


def test_dre_closes_to_an_if_then_else_chain():
    t = closed(example_text("dre.cube"))
    body = t.body
    shapes = []
    while isinstance(body, App) and body.name == "-;" or isinstance(body, Abs):
        if isinstance(body, Abs):
            body = body.body
            continue
        shapes.append(body.args[0].name)
        body = body.args[1]
    assert shapes == ["->", "->", "->"]
    assert body == App("fail")


def test_first_clause_is_tried_first():
    assert shown("member([1,2,3], X)") == ["X = 1", "X = 2", "X = 3"]
    assert shown("has_member([1,2,1], 1)") == ["true"]


# -- evaluation ------------------------------------------------------------

def test_int_of_non_numeral_fails():
    sols, final, _ = run("int(s(a))", program(example_text("int.cube")))
    assert sols == [] and final is FAIL


def test_until_stops_after_condition():
    assert shown("(X=1;X=2;X=3) until X=2") == ["X = 1", "X = 2"]


def test_dre_example():
    prog = program(example_text("dre.cube"))
    sols, final, _ = run("dre([1,2,1,3,2], D)", prog)
    assert shown("dre([1,2,1,3,2], D)", prog) == ["D = [1,3,2]"] and final is FAIL


def test_metacall_through_a_variable():
    assert shown("T = (X = 7), T") == ["T = 7=7, X = 7"]


def test_unbound_metacall_policy():
    assert run("G")[:2] == ([], FAIL)
    assert error_of("G", free_var_policy=FreeVarPolicy.ERROR) == "instantiation_error"


def test_metacall_of_a_number_is_a_type_error():
    assert error_of("G = 3, G") == "type_error(callable,3)"


def test_undefined_procedure():
    assert error_of("nope(1)") == "existence_error(procedure,nope/1)"


def test_if_then_else_takes_first_condition_solution():
    assert shown("(X=1;X=2) -> Y=X -; Y=0") == ["X = 1, Y = 1"]
    assert shown("fail -> Y=1 -; Y=0") == ["Y = 0"]


def test_bare_arrow_means_else_fail():
    assert shown("(X=1;X=2) -> true") == ["X = 1"]
    assert shown("fail -> true") == []


def test_else_without_arrow_is_a_disjunction():
    assert shown("X=1 -; X=2") == ["X = 1", "X = 2"]


def test_unless():
    assert shown("(X=1;X=2;X=3) unless X=2") == ["X = 1"]


def test_conjunction_order_matters_for_var():
    assert shown("var(X), X=a") == ["X = a"]
    assert shown("X=a, var(X)") == []


# -- builtins --------------------------------------------------------------

def test_is():
    assert shown("X is 3+4") == ["X = 7"]
    assert shown("7 is 3+4") == ["true"]
    assert shown("X is Y+1") == []
    assert shown("X is 7 // 2, Y is -7 mod 3, Z is 2*3-1") == ["X = 3, Y = 2, Z = 5"]
    assert shown("X is pow(2, 3)") == []


def test_big_integers():
    assert shown("X is 99999999999 * 99999999999") == ["X = 9999999999800000000001"]


def test_division_by_zero_raises():
    assert error_of("X is 1 // 0") == "evaluation_error(zero_divisor)"
    assert error_of("X is 1 mod 0") == "evaluation_error(zero_divisor)"
    assert shown("catch(X is 1//0, evaluation_error(E), true)") == ["E = zero_divisor"]


def test_comparisons():
    assert shown("1 < 2") == ["true"]
    assert shown("2 =< 1") == []
    assert shown("X < 1") == []
    assert shown("1+1 =:= 2, 1 =\\= 2, 3 >= 3, 4 > 3") == ["true"]


def test_throw():
    assert error_of("throw(err)") == "err"
    assert error_of("X = 5, throw(e(X))") == "e(5)"
    sols, final, _ = run("throw(a) ; X = 1")
    assert sols == [] and isinstance(final, Raise)


def test_catch():
    assert shown("catch(throw(e(1)), e(X), Y = X)") == ["X = 1, Y = 1"]
    assert shown("catch((X=1 ; throw(boom)), boom, X=2)") == ["X = 1", "X = 2"]
    assert error_of("catch(throw(other), boom, true)") == "other"


def test_catch_restores_bindings_from_before_the_goal():
    assert shown("catch((X=1, throw(b)), b, true)") == ["true"]


def test_system():
    prog = program("p :: 1.")
    assert shown("system(true)") == ["true"]
    assert shown("system(p(1))", prog) == []
    assert shown("system(X=Y)") == ["true"]


def test_clause():
    prog = program()
    prog.add_clauses(parse_prolog("p(1) :- !.  p(2)."))
    assert shown("clause(p(X), B)", prog) == ["X = 1, B = (!)", "X = 2, B = true"]
    assert shown("clause(q(X), B)", prog) == []
    assert shown("clause(p(2), B)", prog) == ["B = true"]
    assert error_of("clause(3, B)", prog).startswith("type_error")


# -- budgets ---------------------------------------------------------------

LOOP = "loop :: X <- loop(X)."


def test_fuel_runs_out():
    _, final, _ = run("loop(1)", program(LOOP), fuel=1000)
    assert final is EXHAUSTED


def test_max_depth_runs_out():
    _, final, _ = run("loop(1)", program(LOOP), max_depth=50)
    assert final is EXHAUSTED


def test_solutions_before_exhaustion_are_kept():
    sols, final, _ = run("int(X)", program(example_text("int.cube")), fuel=200)
    assert len(sols) > 3 and final is EXHAUSTED


def test_deep_recursion_does_not_overflow_the_stack():
    prog = program("count :: 0 .. N <- N > 0, M is N - 1, count(M).")
    assert shown("count(20000)", prog) == ["true"]


# -- loading ---------------------------------------------------------------

def test_builtins_cannot_be_redefined():
    for name in ("true", "until", "is", "catch"):
        with pytest.raises(LoadError):
            program(f"'{name}' :: a.")


def test_failed_load_defines_nothing():
    prog = Program()
    with pytest.raises(LoadError):
        prog.add_procedures(parse_program("ok :: a.\n'=' :: b."))
    assert "ok" not in prog.procedures


# -- properties ------------------------------------------------------------

def generated(seed):
    g = gen_program(GenConfig(seed))
    return g.program, g.queries


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_solutions_entail_the_start(seed):
    prog, queries = generated(seed)
    for q in queries:
        s0 = Setting(q.nvars)
        sols, _ = take(Evaluator(prog, EvalConfig(fuel=20_000)).eval(q.term, s0), 20)
        assert all(entails(s, s0) for s in sols)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 300), st.integers(0, 300))
def test_more_fuel_extends_the_answer(seed, f1, f2):
    f1, f2 = min(f1, f2), max(f1, f2)
    prog, queries = generated(seed)
    for q in queries:
        s0 = Setting(q.nvars)
        a = Evaluator(prog, EvalConfig(fuel=f1)).eval(q.term, s0)
        b = Evaluator(prog, EvalConfig(fuel=f2)).eval(q.term, s0)
        assert prefix_le(a, b, 30)


def test_member_call_is_its_unfolding():
    prog = program()
    q = parse_query("member([1,2], X)")
    d = prog.procedures["member"].closed
    unfolded = beta_apply(d, make_list(list(q.term.args)))
    ev = Evaluator(prog)
    a, af = take(ev.eval(q.term, Setting(q.nvars)))
    b, bf = take(Evaluator(prog).eval(unfolded, Setting(q.nvars)))
    assert af is bf is FAIL
    assert [dict(s.bindings) == dict(t.bindings) for s, t in zip(a, b)] == [True, True]
    assert atom(1) in {s.deref(Var(q.names["X"])) for s in a}
