"""Clause translation and the evaluator.

Clauses become partial definitions (abstractions over the argument list
and the continuation), composed in textual order and closed with
``fail``.  Evaluation maps a term and a setting to a lazy outcome.

Evaluation carries an environment from abstraction-bound variables to
the terms they stand for, rather than substituting into the body at each
call.  The environment is applied at the leaves (unification, builtins,
call arguments), which gives the same result as beta-reduction because
the replacement terms are data and are never evaluated as code in place.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from .errors import LoadError
from .outcome import (
    EXHAUSTED, FAIL, Catch, Cons, Fuel, IfThenElse, Outcome, Product, Prune, Raise,
    Sum, Thunk,
)
from .setting import RationalTerm, Setting, transplant, unify
from .syntax.reader import (
    ClauseSrc, Exclusive, Inclusive, ProcedureSrc, PrologClause, parse_query,
)
from .term import (
    Abs, App, Null, Pair, Term, Var, beta_apply, make_list, max_var, plug,
)


class FreeVarPolicy(enum.Enum):
    FAIL = "fail"
    ERROR = "error"


@dataclass
class EvalConfig:
    fuel: int = 1_000_000
    free_var_policy: FreeVarPolicy = FreeVarPolicy.FAIL
    # bound on nested procedure unfoldings; None means unbounded
    max_depth: Optional[int] = None


@dataclass(frozen=True)
class Definition:
    closed: Term


COMPARISONS = {
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "=<": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
    "=:=": lambda a, b: a == b,
    "=\\=": lambda a, b: a != b,
}

BUILTINS = frozenset(
    [("true", 0), ("fail", 0), ("=", 2), ("is", 2), ("throw", 1), ("catch", 3),
     ("clause", 2), ("system", 1)]
    + [(op, 2) for op in COMPARISONS]
)

CONTROL = frozenset([",", ";", "-;", "->", "until", "unless", "!", "[]", "."])

RESERVED = CONTROL | {name for name, _ in BUILTINS}

TRUE = App("true")
FAIL_TERM = App("fail")


# -- clause translation ---------------------------------------------------

def _conj(a: Term, b: Term) -> Term:
    return a if b == TRUE else Pair(a, b)


def translate_clause(c: ClauseSrc) -> Term:
    """The partial definition ``λA.λD. ...`` of one clause."""
    parts = list(c.head_args) + [c.kind.body]
    if isinstance(c.kind, Exclusive):
        parts.append(c.kind.cond)
    top = max([max_var(x) for x in parts] + list(c.locals), default=-1)
    a, d = Var(top + 1), Var(top + 2)
    head_eq = App("=", (a, make_list(c.head_args)))
    if isinstance(c.kind, Inclusive):
        inner = _abstract(c.locals, _conj(head_eq, c.kind.body))
        body: Term = App(";", (inner, d))
    else:
        ite = App("-;", (App("->", (_conj(head_eq, c.kind.cond), c.kind.body)), d))
        body = _abstract(c.locals, ite)
    return Abs(a.id, Abs(d.id, body))


def _abstract(vars_: Iterable[int], t: Term) -> Term:
    for v in reversed(list(vars_)):
        t = Abs(v, t)
    return t


def compose_after(p2: Term, p1: Term) -> Term:
    """``p2 after p1``: try ``p1``, continuing with ``p2``."""
    top = max(max_var(p1), max_var(p2))
    a, d = Var(top + 1), Var(top + 2)
    inner = beta_apply(beta_apply(p2, a), d)
    return Abs(a.id, Abs(d.id, beta_apply(beta_apply(p1, a), inner)))


def close_def(p: Term) -> Definition:
    a = Var(max_var(p) + 1)
    body = beta_apply(beta_apply(p, a), FAIL_TERM)
    return Definition(Abs(a.id, _drop_fail_disjuncts(body)))


def _drop_fail_disjuncts(t: Term) -> Term:
    """Rewrite ``(X ; fail)`` to ``X``; the two have the same denotation."""
    if isinstance(t, App):
        if not t.args:
            return t
        args = tuple(_drop_fail_disjuncts(x) for x in t.args)
        if t.name == ";" and len(args) == 2 and args[1] == FAIL_TERM:
            return args[0]
        return App(t.name, args)
    if isinstance(t, Pair):
        return Pair(_drop_fail_disjuncts(t.left), _drop_fail_disjuncts(t.right))
    if isinstance(t, Abs):
        return Abs(t.bound, _drop_fail_disjuncts(t.body))
    return t


def define_procedure(name, clauses: Iterable[ClauseSrc]) -> Definition:
    clauses = list(clauses)
    if not clauses:
        raise LoadError(f"procedure {name} has no clauses")
    p = translate_clause(clauses[0])
    for c in clauses[1:]:
        p = compose_after(translate_clause(c), p)
    return close_def(p)


# -- programs ---------------------------------------------------------------

@dataclass
class Program:
    procedures: dict = field(default_factory=dict)
    clause_db: list = field(default_factory=list)
    builtins: frozenset = BUILTINS

    def copy(self) -> "Program":
        return Program(dict(self.procedures), list(self.clause_db), self.builtins)

    def add_procedures(self, procs: Iterable[ProcedureSrc]) -> None:
        """Define every procedure or, on any error, none of them."""
        new = {}
        for p in procs:
            if p.name in RESERVED or isinstance(p.name, int):
                raise LoadError(f"cannot redefine built-in {p.name}")
            new[p.name] = define_procedure(p.name, p.clauses)
        self.procedures.update(new)

    def add_clauses(self, clauses: Iterable[PrologClause]) -> None:
        clauses = list(clauses)
        for c in clauses:
            if c.head.name in RESERVED:
                raise LoadError(f"clause database cannot redefine {c.head.name}/{len(c.head.args)}")
        self.clause_db.extend(clauses)


def error_term(kind: str, *args: Term) -> Term:
    return App(kind, args) if args else App(kind)


def _raise(s: Setting, t: Term) -> Raise:
    return Raise(RationalTerm(t, s))


# -- arithmetic ------------------------------------------------------------

class _ZeroDivisor(Exception):
    pass


def _arith(s: Setting, e: Term) -> Optional[int]:
    """Integer value of ``e`` under ``s``, or ``None`` if it has none."""
    return _arith_go(s, e, set())


def _arith_go(s: Setting, e: Term, active: set) -> Optional[int]:
    while isinstance(e, Var):
        b = s.lookup(e.id)
        if b is None or e.id in active:
            return None
        active = active | {e.id}
        e = b
    if not isinstance(e, App):
        return None
    if isinstance(e.name, int):
        return e.name if not e.args else None
    if len(e.args) == 1 and e.name == "-":
        x = _arith_go(s, e.args[0], active)
        return None if x is None else -x
    if len(e.args) != 2 or e.name not in ("+", "-", "*", "//", "mod"):
        return None
    x = _arith_go(s, e.args[0], active)
    if x is None:
        return None
    y = _arith_go(s, e.args[1], active)
    if y is None:
        return None
    if e.name == "+":
        return x + y
    if e.name == "-":
        return x - y
    if e.name == "*":
        return x * y
    if y == 0:
        raise _ZeroDivisor()
    if e.name == "//":
        q = abs(x) // abs(y)
        return q if (x >= 0) == (y >= 0) else -q
    return x % y


# -- evaluation -------------------------------------------------------------

_EMPTY_ENV: Mapping[int, Term] = {}


class Evaluator:
    """One evaluation run: a program, a config and a shared fuel tank."""

    def __init__(self, program: Program, config: Optional[EvalConfig] = None,
                 fuel: Optional[Fuel] = None):
        self.program = program
        self.config = config or EvalConfig()
        self.fuel = fuel if fuel is not None else Fuel(self.config.fuel)
        self.max_depth = self.config.max_depth

    def eval(self, t: Term, s: Setting, env: Mapping[int, Term] = _EMPTY_ENV,
             depth: int = 0) -> Outcome:
        fuel = self.fuel
        while True:
            if isinstance(t, Pair):
                right = t.right
                return Product(self.eval(t.left, s, env, depth),
                               lambda s2: self.eval(right, s2, env, depth), fuel)
            if isinstance(t, Null):
                return Cons(s, FAIL)
            if isinstance(t, Var):
                if t.id in env:
                    t, env = env[t.id], _EMPTY_ENV
                    continue
                b = s.deref(t)
                if isinstance(b, Var):
                    if self.config.free_var_policy is FreeVarPolicy.ERROR:
                        return _raise(s, error_term("instantiation_error"))
                    return FAIL
                t = b
                continue
            if isinstance(t, Abs):
                n, s = s.fresh()
                env = {**env, t.bound: Var(n)}
                t = t.body
                continue
            if isinstance(t, App):
                return self.eval_app(t, s, env, depth)
            return _raise(s, error_term("type_error", App("callable"), t))

    def peel(self, t: Term, s: Setting, env: Mapping[int, Term]):
        """Follow environment entries and bindings from a variable."""
        if isinstance(t, Var) and t.id in env:
            t, env = env[t.id], _EMPTY_ENV
        if isinstance(t, Var):
            t = s.deref(t)
        return t, env

    def eval_app(self, t: App, s: Setting, env, depth) -> Outcome:
        name, args, fuel = t.name, t.args, self.fuel
        n = len(args)
        if isinstance(name, int):
            return _raise(s, error_term("type_error", App("callable"), plug(t, env)))
        if n == 2:
            a, b = args
            if name == ";":
                return Sum(self.eval(a, s, env, depth),
                           lambda: self.eval(b, s, env, depth), fuel)
            if name == "until" or name == "unless":
                return Prune(self.eval(a, s, env, depth),
                             lambda s2: self.eval(b, s2, env, depth),
                             name == "until", fuel)
            if name == "-;":
                left, lenv = self.peel(a, s, env)
                if isinstance(left, App) and left.name == "->" and len(left.args) == 2:
                    c, th = left.args
                    return IfThenElse(self.eval(c, s, lenv, depth),
                                      lambda s2: self.eval(th, s2, lenv, depth),
                                      lambda: self.eval(b, s, env, depth), fuel)
                return Sum(self.eval(a, s, env, depth),
                           lambda: self.eval(b, s, env, depth), fuel)
            if name == "->":
                return IfThenElse(self.eval(a, s, env, depth),
                                  lambda s2: self.eval(b, s2, env, depth),
                                  lambda: FAIL, fuel)
            if name == "=":
                s2 = unify(s, plug(a, env), plug(b, env))
                return FAIL if s2 is None else Cons(s2, FAIL)
            if name == "is":
                return self.builtin_is(s, plug(a, env), plug(b, env))
            if name in COMPARISONS:
                return self.builtin_compare(s, name, plug(a, env), plug(b, env))
            if name == "clause":
                return self.builtin_clause(s, plug(a, env), plug(b, env))
        elif n == 0:
            if name == "true":
                return Cons(s, FAIL)
            if name == "fail":
                return FAIL
        elif n == 1:
            if name == "throw":
                return _raise(s, plug(args[0], env))
            if name == "system":
                return self.builtin_system(s, plug(args[0], env))
        elif n == 3 and name == "catch":
            g, c, h = (plug(x, env) for x in args)
            return self.builtin_catch(s, g, c, h, depth)
        return self.call(name, tuple(plug(x, env) for x in args), s, depth)

    def call(self, name, args: tuple, s: Setting, depth: int) -> Outcome:
        d = self.program.procedures.get(name)
        if d is None:
            pi = App("/", (App(name), App(len(args))))
            return _raise(s, error_term("existence_error", App("procedure"), pi))
        if self.max_depth is not None and depth >= self.max_depth:
            return EXHAUSTED
        closed = d.closed
        env = {closed.bound: make_list(args)}
        body = closed.body
        return Thunk(lambda: self.eval(body, s, env, depth + 1), self.fuel)

    # -- builtins --------------------------------------------------------
    def builtin_is(self, s: Setting, x: Term, e: Term) -> Outcome:
        try:
            v = _arith(s, e)
        except _ZeroDivisor:
            return _raise(s, error_term("evaluation_error", App("zero_divisor")))
        if v is None:
            return FAIL
        s2 = unify(s, x, App(v))
        return FAIL if s2 is None else Cons(s2, FAIL)

    def builtin_compare(self, s: Setting, op: str, a: Term, b: Term) -> Outcome:
        try:
            x = _arith(s, a)
            y = _arith(s, b) if x is not None else None
        except _ZeroDivisor:
            return _raise(s, error_term("evaluation_error", App("zero_divisor")))
        if x is None or y is None:
            return FAIL
        return Cons(s, FAIL) if COMPARISONS[op](x, y) else FAIL

    def builtin_system(self, s: Setting, g: Term) -> Outcome:
        g = s.deref(g)
        if isinstance(g, App) and (g.name, len(g.args)) in BUILTINS:
            return Cons(s, FAIL)
        if isinstance(g, Null):
            return Cons(s, FAIL)
        return FAIL

    def builtin_catch(self, s: Setting, goal: Term, catcher: Term, handler: Term,
                      depth: int) -> Outcome:
        def matcher(payload: RationalTerm) -> Optional[Setting]:
            term, s2 = transplant(payload, s)
            return unify(s2, catcher, term)

        return Catch(self.eval(goal, s, _EMPTY_ENV, depth), matcher,
                     lambda s2: self.eval(handler, s2, _EMPTY_ENV, depth), self.fuel)

    def builtin_clause(self, s: Setting, g: Term, b: Term) -> Outcome:
        head = s.deref(g)
        if isinstance(head, Var):
            return _raise(s, error_term("instantiation_error"))
        if not isinstance(head, App) or isinstance(head.name, int):
            return _raise(s, error_term("type_error", App("callable"), g))
        key = (head.name, len(head.args))
        db = [c for c in self.program.clause_db if (c.head.name, len(c.head.args)) == key]
        fuel = self.fuel

        def from_index(i: int) -> Outcome:
            while i < len(db):
                c = db[i]
                i += 1
                ids, s1 = s.fresh_vars(c.nvars)
                ren = {k: Var(v) for k, v in zip(range(c.nvars), ids)}
                s2 = unify(s1, head, plug(c.head, ren))
                if s2 is not None:
                    s2 = unify(s2, b, plug(c.body, ren))
                if s2 is not None:
                    j = i
                    return Cons(s2, Thunk(lambda: from_index(j), fuel))
            return FAIL

        return Thunk(lambda: from_index(0), fuel)


def evaluate(t: Term, s: Setting, program: Program,
             config: Optional[EvalConfig] = None) -> Outcome:
    """Outcome of task ``t`` run in setting ``s`` (fuel is per call)."""
    return Evaluator(program, config).eval(t, s)


class Engine:
    """A program plus configuration, answering queries."""

    def __init__(self, program: Optional[Program] = None,
                 config: Optional[EvalConfig] = None):
        self.program = program if program is not None else Program()
        self.config = config or EvalConfig()

    def evaluate(self, t: Term, s: Setting) -> Outcome:
        return evaluate(t, s, self.program, self.config)

    def query(self, text: str):
        """Parse a goal; return the parsed query and its outcome."""
        q = parse_query(text)
        return q, self.evaluate(q.term, Setting(q.nvars))


__all__ = [
    "FreeVarPolicy", "EvalConfig", "Definition", "Program", "Evaluator", "Engine",
    "BUILTINS", "RESERVED", "translate_clause", "compose_after", "close_def",
    "define_procedure", "evaluate", "error_term",
]
