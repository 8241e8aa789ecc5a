"""Outcome comparison up to renaming of fresh variables.

Two correct evaluators may allocate fresh variables differently and keep
different binding chains, so solutions are compared through the resolved
values of the query variables.  Variables below the initial scope must
match exactly; fresh ones must correspond one-to-one within a solution.
"""

from __future__ import annotations

from typing import Optional, Sequence

from ..outcome import EXHAUSTED, FAIL, Raise
from ..setting import RationalTerm, Setting
from ..term import App, Null, Pair, Var
from .oracle import TRUNCATED


def normalize(s: Setting, query_vars: Sequence[int]) -> tuple:
    return tuple(RationalTerm(Var(v), s) for v in query_vars)


def _match(pairs, s1: Setting, s2: Setting, scope0: int) -> bool:
    fwd: dict[int, int] = {}
    bwd: dict[int, int] = {}
    seen: set = set()
    keep: list = []
    stack = list(pairs)
    while stack:
        x, y = stack.pop()
        x, y = s1.deref(x), s2.deref(y)
        if isinstance(x, Var) or isinstance(y, Var):
            if not (isinstance(x, Var) and isinstance(y, Var)):
                return False
            if x.id < scope0 or y.id < scope0:
                if x.id != y.id:
                    return False
                continue
            if fwd.setdefault(x.id, y.id) != y.id or bwd.setdefault(y.id, x.id) != x.id:
                return False
            continue
        if isinstance(x, Null) or isinstance(y, Null):
            if not (isinstance(x, Null) and isinstance(y, Null)):
                return False
            continue
        key = (id(x), id(y))
        if key in seen:
            continue
        seen.add(key)
        keep += [x, y]
        if isinstance(x, Pair) and isinstance(y, Pair):
            stack += [(x.left, y.left), (x.right, y.right)]
        elif isinstance(x, App) and isinstance(y, App):
            if type(x.name) is not type(y.name) or x.name != y.name or len(x.args) != len(y.args):
                return False
            stack += list(zip(x.args, y.args))
        else:
            return False
    return True


def same_solution(s1: Setting, s2: Setting, query_vars: Sequence[int], scope0: int) -> bool:
    return _match([(Var(v), Var(v)) for v in query_vars], s1, s2, scope0)


def _complete(final) -> bool:
    return final is not None and final is not TRUNCATED


def same_final(a, b, scope0: int) -> bool:
    if isinstance(a, Raise) and isinstance(b, Raise):
        pa, pb = a.payload, b.payload
        return _match([(pa.term, pb.term)], pa.setting, pb.setting, scope0)
    return a is b and a in (FAIL, EXHAUSTED)


def mismatch(a_sols: list, a_final, b_sols: list, b_final, query_vars: Sequence[int],
             scope0: int) -> Optional[str]:
    """Describe the first difference between two outcomes, or ``None``.

    A final of ``None`` or ``TRUNCATED`` marks a prefix that was cut short;
    only the part both sides produced is then compared.
    """
    n = min(len(a_sols), len(b_sols))
    for i in range(n):
        if not same_solution(a_sols[i], b_sols[i], query_vars, scope0):
            return f"solution {i} differs"
    a_done, b_done = _complete(a_final), _complete(b_final)
    if a_done and len(a_sols) < len(b_sols):
        return f"first ends after {len(a_sols)} solutions with {a_final!r}, second goes on"
    if b_done and len(b_sols) < len(a_sols):
        return f"second ends after {len(b_sols)} solutions with {b_final!r}, first goes on"
    if a_done and b_done and not same_final(a_final, b_final, scope0):
        return f"finals differ: {a_final!r} vs {b_final!r}"
    return None


def same_outcome(a_sols, a_final, b_sols, b_final, query_vars, scope0) -> bool:
    return mismatch(a_sols, a_final, b_sols, b_final, query_vars, scope0) is None


__all__ = ["normalize", "same_solution", "same_final", "mismatch", "same_outcome"]
