"""Reference evaluator: the semantic equations, transcribed eagerly.

Every task returns a complete list of solutions with its final marker,
computed by plain recursion.  Procedure calls are unfolded by real
beta-substitution and cut off at a fixed depth, which yields the depth
approximant of the least fixpoint: beyond the bound the outcome is
``EXHAUSTED``.  A solution cap keeps exponential cases bounded; a capped
result ends in ``TRUNCATED`` and is only meaningful as a prefix.

Nothing here calls into the lazy outcome operators or the engine's
unifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..engine import BUILTINS, COMPARISONS, FreeVarPolicy, Program
from ..outcome import EXHAUSTED, FAIL, Outcome, Raise
from ..setting import RationalTerm, Setting
from ..term import Abs, App, Null, Pair, Term, Var, beta_apply, make_list, subst_many
from .unify import OSetting, ounify


class _Truncated(Outcome):
    __slots__ = ()

    def __repr__(self):
        return "TRUNCATED"


TRUNCATED = _Truncated()


@dataclass
class OracleResult:
    solutions: list  # of OSetting
    final: object  # FAIL, EXHAUSTED, TRUNCATED or ("raise", term, OSetting)

    def settings(self) -> list[Setting]:
        return [to_setting(s) for s in self.solutions]

    def final_outcome(self) -> Outcome:
        if isinstance(self.final, tuple):
            _, t, s = self.final
            return Raise(RationalTerm(t, to_setting(s)))
        return self.final


def to_setting(s: OSetting) -> Setting:
    return Setting.of(s.scope, s.bindings)


def from_setting(s: Setting) -> OSetting:
    return OSetting(s.scope, dict(s.bindings.items()))


class _Oracle:
    def __init__(self, program: Program, policy: FreeVarPolicy):
        self.program = program
        self.policy = policy

    def raise_(self, s: OSetting, t: Term):
        return [], ("raise", t, s)

    def ev(self, t: Term, s: OSetting, depth: int, cap: Optional[int]):
        if cap is not None and cap <= 0:
            return [], TRUNCATED
        if isinstance(t, Null):
            return [s], FAIL
        if isinstance(t, Var):
            b = s.deref(t)
            if isinstance(b, Var):
                if self.policy is FreeVarPolicy.ERROR:
                    return self.raise_(s, App("instantiation_error"))
                return [], FAIL
            return self.ev(b, s, depth, cap)
        if isinstance(t, Abs):
            (n,), s2 = s.fresh()
            return self.ev(beta_apply(t, Var(n)), s2, depth, cap)
        if isinstance(t, Pair):
            return self.conj(t.left, t.right, s, depth, cap)
        if not isinstance(t, App):
            return self.raise_(s, App("type_error", (App("callable"), t)))
        name, args = t.name, t.args
        if isinstance(name, int):
            return self.raise_(s, App("type_error", (App("callable"), t)))
        key = (name, len(args))
        if key == (";", 2):
            sols, fin = self.ev(args[0], s, depth, cap)
            if fin is not FAIL:
                return sols, fin
            more, fin = self.ev(args[1], s, depth, _less(cap, len(sols)))
            return sols + more, fin
        if key in (("until", 2), ("unless", 2)):
            return self.prune(args[0], args[1], s, depth, cap, name == "until")
        if key == ("-;", 2):
            left = s.deref(args[0])
            if isinstance(left, App) and left.name == "->" and len(left.args) == 2:
                return self.ite(left.args[0], left.args[1], args[1], s, depth, cap)
            return self.ev(App(";", args), s, depth, cap)
        if key == ("->", 2):
            return self.ite(args[0], args[1], App("fail"), s, depth, cap)
        if key == ("true", 0):
            return [s], FAIL
        if key == ("fail", 0):
            return [], FAIL
        if key == ("=", 2):
            s2 = ounify(s, args[0], args[1])
            return ([s2] if s2 is not None else []), FAIL
        if key == ("is", 2):
            try:
                v = _value(s, args[1], frozenset())
            except ZeroDivisionError:
                return self.raise_(s, App("evaluation_error", (App("zero_divisor"),)))
            if v is None:
                return [], FAIL
            s2 = ounify(s, args[0], App(v))
            return ([s2] if s2 is not None else []), FAIL
        if len(args) == 2 and name in COMPARISONS:
            try:
                x = _value(s, args[0], frozenset())
                y = _value(s, args[1], frozenset()) if x is not None else None
            except ZeroDivisionError:
                return self.raise_(s, App("evaluation_error", (App("zero_divisor"),)))
            ok = x is not None and y is not None and COMPARISONS[name](x, y)
            return ([s] if ok else []), FAIL
        if key == ("throw", 1):
            return self.raise_(s, args[0])
        if key == ("catch", 3):
            return self.catch(args[0], args[1], args[2], s, depth, cap)
        if key == ("system", 1):
            g = s.deref(args[0])
            ok = isinstance(g, Null) or (isinstance(g, App) and (g.name, len(g.args)) in BUILTINS)
            return ([s] if ok else []), FAIL
        if key == ("clause", 2):
            return self.clause(args[0], args[1], s, cap)
        d = self.program.procedures.get(name)
        if d is None:
            pi = App("/", (App(name), App(len(args))))
            return self.raise_(s, App("existence_error", (App("procedure"), pi)))
        if depth <= 0:
            return [], EXHAUSTED
        return self.ev(beta_apply(d.closed, make_list(args)), s, depth - 1, cap)

    def stream(self, t: Term, s: OSetting, depth: int):
        """Solutions of ``t`` one at a time, then its final marker.

        Re-evaluates with a doubling cap; evaluation is deterministic, so
        every round extends the previous prefix.
        """
        cap, done = 1, 0
        while True:
            sols, fin = self.ev(t, s, depth, cap)
            for x in sols[done:]:
                yield x
            done = len(sols)
            if fin is not TRUNCATED:
                yield _Final(fin)
                return
            cap *= 2

    def conj(self, a: Term, b: Term, s: OSetting, depth: int, cap):
        out: list = []
        for x in self.stream(a, s, depth):
            if isinstance(x, _Final):
                return out, x.value
            if cap is not None and len(out) >= cap:
                return out, TRUNCATED
            sols, fin = self.ev(b, x, depth, _less(cap, len(out)))
            out += sols
            if fin is not FAIL:
                return out, fin
        raise AssertionError("stream ended without a final marker")

    def prune(self, a: Term, c: Term, s: OSetting, depth: int, cap, keep_last: bool):
        out: list = []
        for x in self.stream(a, s, depth):
            if isinstance(x, _Final):
                return out, x.value
            if cap is not None and len(out) >= cap:
                return out, TRUNCATED
            sols, fin = self.ev(c, x, depth, 1)
            if sols:
                return (out + [sols[0]] if keep_last else out), FAIL
            if fin is not FAIL:
                return out, fin
            out.append(x)
        raise AssertionError("stream ended without a final marker")

    def ite(self, c: Term, th: Term, el: Term, s: OSetting, depth: int, cap):
        sols, fin = self.ev(c, s, depth, 1)
        if sols:
            return self.ev(th, sols[0], depth, cap)
        if fin is FAIL:
            return self.ev(el, s, depth, cap)
        return [], fin

    def catch(self, goal: Term, catcher: Term, handler: Term, s: OSetting, depth: int, cap):
        sols, fin = self.ev(goal, s, depth, cap)
        if not isinstance(fin, tuple):
            return sols, fin
        _, payload, at = fin
        t, s1 = _import(payload, at, s)
        s2 = ounify(s1, catcher, t)
        if s2 is None:
            return sols, fin
        more, fin2 = self.ev(handler, s2, depth, _less(cap, len(sols)))
        return sols + more, fin2

    def clause(self, g: Term, b: Term, s: OSetting, cap):
        head = s.deref(g)
        if isinstance(head, Var):
            return self.raise_(s, App("instantiation_error"))
        if not isinstance(head, App) or isinstance(head.name, int):
            return self.raise_(s, App("type_error", (App("callable"), g)))
        out = []
        for c in self.program.clause_db:
            if c.head.name != head.name or len(c.head.args) != len(head.args):
                continue
            if cap is not None and len(out) >= cap:
                return out, TRUNCATED
            ids, s1 = s.fresh(c.nvars)
            ren = {k: Var(v) for k, v in enumerate(ids)}
            s2 = ounify(s1, head, subst_many(c.head, ren))
            if s2 is not None:
                s2 = ounify(s2, b, subst_many(c.body, ren))
            if s2 is not None:
                out.append(s2)
        return out, FAIL


class _Final:
    __slots__ = ("value",)

    def __init__(self, value):
        self.value = value


def _less(cap, n):
    return None if cap is None else cap - n


def _value(s: OSetting, e: Term, active) -> Optional[int]:
    if isinstance(e, Var):
        if e.id in active or e.id not in s.bindings:
            return None
        return _value(s, s.bindings[e.id], active | {e.id})
    if not isinstance(e, App):
        return None
    if isinstance(e.name, int) and not e.args:
        return e.name
    if e.name == "-" and len(e.args) == 1:
        x = _value(s, e.args[0], active)
        return None if x is None else -x
    if len(e.args) != 2 or e.name not in ("+", "-", "*", "//", "mod"):
        return None
    x = _value(s, e.args[0], active)
    y = _value(s, e.args[1], active) if x is not None else None
    if x is None or y is None:
        return None
    if e.name == "+":
        return x + y
    if e.name == "-":
        return x - y
    if e.name == "*":
        return x * y
    if y == 0:
        raise ZeroDivisionError
    if e.name == "//":
        q = abs(x) // abs(y)
        return q if (x < 0) == (y < 0) else -q
    return x - y * (x // y)


def _import(t: Term, src: OSetting, dst: OSetting) -> tuple[Term, OSetting]:
    """Move a payload from the raising setting into ``dst``.

    Every bound variable reachable from ``t`` and every variable outside
    ``dst``'s scope is replaced by a fresh one of ``dst``; the bound ones
    carry their (renamed) bindings along.
    """
    ren: dict[int, Var] = {}
    order: list[int] = []
    todo = [t]
    while todo:
        x = todo.pop()
        if isinstance(x, Var):
            bound = x.id in src.bindings
            if (bound or x.id >= dst.scope) and x.id not in ren:
                (n,), dst = dst.fresh()
                ren[x.id] = Var(n)
                order.append(x.id)
                if bound:
                    todo.append(src.bindings[x.id])
        elif isinstance(x, Pair):
            todo += [x.left, x.right]
        elif isinstance(x, App):
            todo += list(x.args)
    bindings = dict(dst.bindings)
    for v in order:
        if v in src.bindings:
            bindings[ren[v].id] = subst_many(src.bindings[v], ren)
    return subst_many(t, ren), OSetting(dst.scope, bindings)


def oracle_eval(t: Term, s: Setting, program: Program, depth: int,
                cap: Optional[int] = None,
                policy: FreeVarPolicy = FreeVarPolicy.FAIL) -> OracleResult:
    """Reference outcome of task ``t`` in ``s`` with calls unfolded ``depth`` deep."""
    sols, fin = _Oracle(program, policy).ev(t, from_setting(s), depth, cap)
    return OracleResult(sols, fin)


__all__ = ["oracle_eval", "OracleResult", "TRUNCATED", "to_setting", "from_setting"]
