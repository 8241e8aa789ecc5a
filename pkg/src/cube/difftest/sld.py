"""Classical SLD resolution with cut, as a goal-stack and choicepoint machine.

This is the ground truth for the meta-interpreter: clause order, goal
order, and cut removing every choicepoint created since its clause was
entered.  A cut inside a disjunction is transparent (it cuts the whole
clause); a cut inside a metacalled goal is local to that goal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..engine import COMPARISONS
from ..outcome import EXHAUSTED, FAIL
from ..setting import Setting
from ..term import App, Null, Pair, Term, Var, subst_many
from .oracle import TRUNCATED, OracleResult, _value, from_setting
from .unify import OSetting, ounify


@dataclass(frozen=True)
class _Goal:
    term: Term
    barrier: int  # choicepoint height to cut back to
    depth: int


# a goal list is a linked list: (goal, rest) or None
def _push(goal: _Goal, rest):
    return (goal, rest)


@dataclass
class _Alt:
    """A choicepoint: a goal list to resume and the setting to resume in."""

    goals: object
    setting: OSetting
    # for clause choicepoints: remaining clauses to try for a call
    call: Optional[tuple] = None


def sld_cut_eval(db: list, goal: Term, depth: int, s: Optional[Setting] = None,
                 cap: Optional[int] = None, nvars: Optional[int] = None) -> OracleResult:
    """Solutions of ``goal`` against the clause list ``db``.

    ``depth`` bounds the nesting of predicate calls; going deeper makes
    the whole run end in ``EXHAUSTED``, as a real Prolog would not have
    returned at that point.
    """
    if s is None:
        s = Setting(nvars if nvars is not None else 0)
    by_key: dict = {}
    for c in db:
        by_key.setdefault((c.head.name, len(c.head.args)), []).append(c)

    sols: list = []
    cps: list[_Alt] = []
    goals = _push(_Goal(goal, 0, 0), None)
    st = from_setting(s)

    def backtrack():
        while cps:
            alt = cps.pop()
            if alt.call is None:
                return alt.goals, alt.setting
            term, rest, clauses, i, d = alt.call
            resumed = try_clauses(term, rest, clauses, i, d, alt.setting)
            if resumed is not None:
                return resumed
        return None

    def try_clauses(term: App, rest, clauses, i: int, d: int, st: OSetting):
        while i < len(clauses):
            c = clauses[i]
            i += 1
            ids, st1 = st.fresh(c.nvars)
            ren = {k: Var(v) for k, v in enumerate(ids)}
            st2 = ounify(st1, term, subst_many(c.head, ren))
            if st2 is None:
                continue
            barrier = len(cps)
            if i < len(clauses):
                cps.append(_Alt(None, st, (term, rest, clauses, i, d)))
            body = subst_many(c.body, ren)
            return _push(_Goal(body, barrier, d + 1), rest), st2
        return None

    while True:
        if goals is None:
            sols.append(st)
            if cap is not None and len(sols) >= cap:
                return OracleResult(sols, TRUNCATED)
            nxt = backtrack()
            if nxt is None:
                return OracleResult(sols, FAIL)
            goals, st = nxt
            continue
        g, rest = goals
        t = st.deref(g.term)
        ok = True
        if isinstance(g.term, Var) and not isinstance(t, Var):
            # metacall: a cut inside reaches only as far as the call itself
            goals = _push(_Goal(t, len(cps), g.depth), rest)
        elif isinstance(t, Var):
            ok = False
        elif isinstance(t, Null):
            goals = rest
        elif isinstance(t, Pair):
            goals = _push(_Goal(t.left, g.barrier, g.depth),
                          _push(_Goal(t.right, g.barrier, g.depth), rest))
        elif not isinstance(t, App) or isinstance(t.name, int):
            ok = False
        else:
            name, args = t.name, t.args
            key = (name, len(args))
            if key == ("true", 0):
                goals = rest
            elif key == ("fail", 0):
                ok = False
            elif key == ("!", 0):
                del cps[g.barrier:]
                goals = rest
            elif key == (",", 2):
                goals = _push(_Goal(args[0], g.barrier, g.depth),
                              _push(_Goal(args[1], g.barrier, g.depth), rest))
            elif key == (";", 2):
                cps.append(_Alt(_push(_Goal(args[1], g.barrier, g.depth), rest), st))
                goals = _push(_Goal(args[0], g.barrier, g.depth), rest)
            elif key == ("=", 2):
                st2 = ounify(st, args[0], args[1])
                ok = st2 is not None
                if ok:
                    st, goals = st2, rest
            elif key == ("is", 2):
                v = _value(st, args[1], frozenset())
                st2 = None if v is None else ounify(st, args[0], App(v))
                ok = st2 is not None
                if ok:
                    st, goals = st2, rest
            elif len(args) == 2 and name in COMPARISONS:
                x = _value(st, args[0], frozenset())
                y = _value(st, args[1], frozenset()) if x is not None else None
                ok = x is not None and y is not None and COMPARISONS[name](x, y)
                if ok:
                    goals = rest
            elif key == ("call", 1):
                goals = _push(_Goal(args[0], len(cps), g.depth), rest)
            else:
                if g.depth >= depth:
                    return OracleResult(sols, EXHAUSTED)
                nxt = try_clauses(t, rest, by_key.get(key, []), 0, g.depth, st)
                if nxt is None:
                    ok = False
                else:
                    goals, st = nxt
        if not ok:
            nxt = backtrack()
            if nxt is None:
                return OracleResult(sols, FAIL)
            goals, st = nxt


__all__ = ["sld_cut_eval"]
