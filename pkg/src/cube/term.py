"""Abstract syntax: null, variables, pairs, applications and abstractions.

Variables are plain natural numbers ordered numerically.  Constants are
either ``str`` (atom text) or ``int`` (integer literals), so ``App(1)``
and ``App('1')`` are different constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import count
from typing import Iterable, Iterator, Mapping, Union

from .errors import NotAnAbstraction

Const = Union[str, int]


class Term:
    __slots__ = ()


@dataclass(frozen=True, slots=True)
class Null(Term):
    def __repr__(self):
        return "NULL"


NULL = Null()


@dataclass(frozen=True, slots=True)
class Var(Term):
    id: int

    def __repr__(self):
        return f"Var({self.id})"


@dataclass(frozen=True, slots=True)
class Pair(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class App(Term):
    name: Const
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def arglist(self) -> Term:
        return make_list(self.args)


@dataclass(frozen=True, slots=True)
class Abs(Term):
    bound: int
    body: Term


def atom(name: Const) -> App:
    return App(name, ())


def make_list(items: Iterable[Term], tail: Term = NULL) -> Term:
    out = tail
    for item in reversed(list(items)):
        out = Pair(item, out)
    return out


def split_list(t: Term) -> tuple[list[Term], Term]:
    """Split a pair chain into its elements and the final tail."""
    items = []
    while isinstance(t, Pair):
        items.append(t.left)
        t = t.right
    return items, t


def subterms(t: Term) -> Iterator[Term]:
    stack = [t]
    while stack:
        t = stack.pop()
        yield t
        if isinstance(t, Pair):
            stack.append(t.right)
            stack.append(t.left)
        elif isinstance(t, App):
            stack.extend(reversed(t.args))
        elif isinstance(t, Abs):
            stack.append(t.body)


def free_vars(t: Term) -> set[int]:
    out: set[int] = set()
    stack: list[tuple[Term, frozenset]] = [(t, frozenset())]
    while stack:
        t, bound = stack.pop()
        if isinstance(t, Var):
            if t.id not in bound:
                out.add(t.id)
        elif isinstance(t, Pair):
            stack.append((t.right, bound))
            stack.append((t.left, bound))
        elif isinstance(t, App):
            stack.extend((a, bound) for a in t.args)
        elif isinstance(t, Abs):
            stack.append((t.body, bound | {t.bound}))
    return out


def all_var_ids(t: Term) -> set[int]:
    """Every variable id occurring in ``t``, bound or free."""
    out = set()
    for u in subterms(t):
        if isinstance(u, Var):
            out.add(u.id)
        elif isinstance(u, Abs):
            out.add(u.bound)
    return out


def max_var(t: Term) -> int:
    return max(all_var_ids(t), default=-1)


def subst_many(t: Term, mapping: Mapping[int, Term]) -> Term:
    """Simultaneously replace free occurrences of the mapped variables.

    Bound variables that would capture a free variable of a replacement
    are renamed to fresh ids above every id in sight.
    """
    if not mapping:
        return t
    repl_fv: set[int] = set()
    for r in mapping.values():
        repl_fv |= free_vars(r)
    fresh = None

    def next_fresh() -> int:
        nonlocal fresh
        if fresh is None:
            top = max_var(t)
            for k, r in mapping.items():
                top = max(top, k, max_var(r))
            fresh = count(top + 1)
        return next(fresh)

    def go(t: Term, m: Mapping[int, Term]) -> Term:
        if isinstance(t, Var):
            return m.get(t.id, t)
        if isinstance(t, Pair):
            left = go(t.left, m)
            right = go(t.right, m)
            if left is t.left and right is t.right:
                return t
            return Pair(left, right)
        if isinstance(t, App):
            if not t.args:
                return t
            args = tuple(go(a, m) for a in t.args)
            if all(a is b for a, b in zip(args, t.args)):
                return t
            return App(t.name, args)
        if isinstance(t, Abs):
            b = t.bound
            if b in m:
                m = {k: v for k, v in m.items() if k != b}
                if not m:
                    return t
            if b in repl_fv:
                nb = next_fresh()
                body = go(t.body, {**m, b: Var(nb)})
                return Abs(nb, body)
            body = go(t.body, m)
            return t if body is t.body else Abs(b, body)
        return t

    return go(t, mapping)


def plug(t: Term, env: Mapping[int, Term]) -> Term:
    """Replace variables by their ``env`` entries, without renaming.

    Only valid when no abstraction inside ``t`` binds a variable that is
    free in a replacement; the engine guarantees this by never plugging
    into terms containing abstractions other than shadowing ones.
    """
    if not env:
        return t
    if isinstance(t, Var):
        return env.get(t.id, t)
    if isinstance(t, App):
        if not t.args:
            return t
        return App(t.name, tuple(plug(a, env) for a in t.args))
    if isinstance(t, Pair):
        return Pair(plug(t.left, env), plug(t.right, env))
    if isinstance(t, Abs):
        inner = {k: v for k, v in env.items() if k != t.bound}
        return Abs(t.bound, plug(t.body, inner))
    return t


def subst_free(t: Term, v: int, r: Term) -> Term:
    return subst_many(t, {v: r})


def beta_apply(f: Term, a: Term) -> Term:
    if not isinstance(f, Abs):
        raise NotAnAbstraction(f"cannot apply a non-abstraction: {f!r}")
    return subst_free(f.body, f.bound, a)


def canonical(t: Term, start: int | None = None) -> Term:
    """Rename bound variables to consecutive ids in binding order.

    Free variables keep their ids; bound ones are numbered from ``start``
    (default: one above the largest free id).
    """
    if start is None:
        start = max(free_vars(t), default=-1) + 1
    return rename_bound(t, count(start))


def alpha_equal(a: Term, b: Term) -> bool:
    start = max(free_vars(a) | free_vars(b), default=-1) + 1
    return canonical(a, start) == canonical(b, start)


def rename_bound(t: Term, ids: Iterator[int]) -> Term:
    """Give every abstraction a fresh bound id drawn from ``ids``."""

    def go(t: Term, env: dict[int, int]) -> Term:
        if isinstance(t, Var):
            return Var(env[t.id]) if t.id in env else t
        if isinstance(t, Pair):
            return Pair(go(t.left, env), go(t.right, env))
        if isinstance(t, App):
            return App(t.name, tuple(go(a, env) for a in t.args)) if t.args else t
        if isinstance(t, Abs):
            nb = next(ids)
            return Abs(nb, go(t.body, {**env, t.bound: nb}))
        return t

    return go(t, {})
