"""Settings: a variable scope plus a binding store over rational trees.

A setting with scope ``n`` covers the variables ``0 .. n-1``.  Bindings are
triangular (a bound variable may map to a term mentioning other bound
variables) and may be cyclic, since unification has no occurs check.
Everything here is persistent: operations return new settings and never
disturb the ones they were given.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from immutables import Map

from .errors import AbstractionInUnification, CyclicTermError
from .term import Abs, App, Null, Pair, Term, Var


@dataclass(frozen=True, slots=True)
class Setting:
    scope: int = 0
    bindings: Map = field(default_factory=Map)

    @classmethod
    def of(cls, scope: int, bindings: dict | None = None) -> "Setting":
        return cls(scope, Map(bindings or {}))

    def fresh(self) -> tuple[int, "Setting"]:
        return self.scope, Setting(self.scope + 1, self.bindings)

    def fresh_vars(self, k: int) -> tuple[range, "Setting"]:
        return range(self.scope, self.scope + k), Setting(self.scope + k, self.bindings)

    def deref(self, t: Term) -> Term:
        b = self.bindings
        while isinstance(t, Var):
            nxt = b.get(t.id)
            if nxt is None:
                return t
            t = nxt
        return t

    def lookup(self, v: int) -> Optional[Term]:
        return self.bindings.get(v)

    def bind(self, v: int, t: Term) -> "Setting":
        return Setting(self.scope, self.bindings.set(v, t))


def fresh(s: Setting) -> tuple[int, Setting]:
    return s.fresh()


def unify(s: Setting, a: Term, b: Term) -> Optional[Setting]:
    """Most general unifier over rational trees, or ``None`` on clash.

    Two free variables are bound larger-to-smaller.  Compound pairs already
    under comparison are assumed equal, which makes cyclic inputs terminate.
    """
    m = s.bindings.mutate()
    seen: set[tuple[int, int]] = set()
    # keeps every compared node alive so id() keys stay unique
    keep: list[Term] = []
    stack = [(a, b)]

    def deref(t):
        while isinstance(t, Var):
            nxt = m.get(t.id)
            if nxt is None:
                return t
            t = nxt
        return t

    while stack:
        x, y = stack.pop()
        x = deref(x)
        y = deref(y)
        if x is y:
            continue
        if isinstance(x, Var):
            if isinstance(y, Var):
                if x.id == y.id:
                    continue
                if x.id > y.id:
                    m[x.id] = y
                else:
                    m[y.id] = x
            else:
                if isinstance(y, Abs):
                    raise AbstractionInUnification(repr(y))
                m[x.id] = y
            continue
        if isinstance(y, Var):
            if isinstance(x, Abs):
                raise AbstractionInUnification(repr(x))
            m[y.id] = x
            continue
        if isinstance(x, Abs) or isinstance(y, Abs):
            raise AbstractionInUnification(repr(x if isinstance(x, Abs) else y))
        if isinstance(x, Null):
            if isinstance(y, Null):
                continue
            return None
        if isinstance(x, Pair):
            if not isinstance(y, Pair):
                return None
            key = (id(x), id(y))
            if key in seen:
                continue
            seen.add(key)
            keep.append(x)
            keep.append(y)
            stack.append((x.right, y.right))
            stack.append((x.left, y.left))
            continue
        if isinstance(x, App):
            if not isinstance(y, App) or x.name != y.name or len(x.args) != len(y.args):
                return None
            if type(x.name) is not type(y.name):
                return None
            if not x.args:
                continue
            key = (id(x), id(y))
            if key in seen:
                continue
            seen.add(key)
            keep.append(x)
            keep.append(y)
            stack.extend(zip(reversed(x.args), reversed(y.args)))
            continue
        return None
    return Setting(s.scope, m.finish())


@dataclass(frozen=True, slots=True, eq=False)
class RationalTerm:
    """A term read through a setting: a finite graph, possibly cyclic."""

    term: Term
    setting: Setting

    def node(self) -> Term:
        return self.setting.deref(self.term)

    def walk(self) -> Term:
        return walk(self.setting, self.term)

    def is_cyclic(self) -> bool:
        try:
            walk(self.setting, self.term)
        except CyclicTermError:
            return True
        return False


def resolve(s: Setting, t: Term) -> RationalTerm:
    return RationalTerm(t, s)


_VISIT, _EXIT_VAR, _MK_PAIR, _MK_APP = range(4)


def walk(s: Setting, t: Term) -> Term:
    """Fully substitute bound variables; raise CyclicTermError on cycles."""
    bindings = s.bindings
    memo: dict[int, Term] = {}
    active: set[int] = set()
    out: list[Term] = []
    stack: list[tuple[int, object]] = [(_VISIT, t)]
    while stack:
        op, x = stack.pop()
        if op == _VISIT:
            if isinstance(x, Var):
                if x.id in memo:
                    out.append(memo[x.id])
                    continue
                b = bindings.get(x.id)
                if b is None:
                    out.append(x)
                    continue
                if x.id in active:
                    raise CyclicTermError(f"variable {x.id} is bound to a cyclic term")
                active.add(x.id)
                stack.append((_EXIT_VAR, x.id))
                stack.append((_VISIT, b))
            elif isinstance(x, Pair):
                stack.append((_MK_PAIR, x))
                stack.append((_VISIT, x.right))
                stack.append((_VISIT, x.left))
            elif isinstance(x, App) and x.args:
                stack.append((_MK_APP, x))
                stack.extend((_VISIT, a) for a in reversed(x.args))
            else:
                out.append(x)
        elif op == _EXIT_VAR:
            active.discard(x)
            memo[x] = out[-1]
        elif op == _MK_PAIR:
            right = out.pop()
            left = out.pop()
            out.append(x if left is x.left and right is x.right else Pair(left, right))
        else:
            n = len(x.args)
            args = tuple(out[-n:])
            del out[-n:]
            same = all(p is q for p, q in zip(args, x.args))
            out.append(x if same else App(x.name, args))
    return out[0]


def rational_equal(a: RationalTerm, b: RationalTerm) -> bool:
    """Bisimulation equality of two (possibly cyclic) resolved terms."""
    sa, sb = a.setting, b.setting
    seen: set[tuple[int, int]] = set()
    keep: list[Term] = []
    stack = [(a.term, b.term)]
    while stack:
        x, y = stack.pop()
        x = sa.deref(x)
        y = sb.deref(y)
        if isinstance(x, Var) or isinstance(y, Var):
            if not (isinstance(x, Var) and isinstance(y, Var) and x.id == y.id):
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
        keep.append(x)
        keep.append(y)
        if isinstance(x, Pair) and isinstance(y, Pair):
            stack.append((x.right, y.right))
            stack.append((x.left, y.left))
        elif isinstance(x, App) and isinstance(y, App):
            if x.name != y.name or type(x.name) is not type(y.name) or len(x.args) != len(y.args):
                return False
            stack.extend(zip(x.args, y.args))
        elif isinstance(x, Abs) and isinstance(y, Abs):
            if x.bound != y.bound:
                return False
            stack.append((x.body, y.body))
        else:
            return False
    return True


def entails(s2: Setting, s1: Setting) -> bool:
    if s2.scope < s1.scope:
        return False
    for v, t in s1.bindings.items():
        if not rational_equal(RationalTerm(t, s2), RationalTerm(Var(v), s2)):
            return False
    return True


def equivalent(s1: Setting, s2: Setting) -> bool:
    """Same scope and mutual entailment."""
    return s1.scope == s2.scope and entails(s1, s2) and entails(s2, s1)


def transplant(src: RationalTerm, dst: Setting) -> tuple[Term, Setting]:
    """Rebuild ``src`` as a term living in ``dst``.

    ``src`` must come from a setting that entails ``dst`` (as an exception
    payload does).  Variables outside ``dst``'s scope are replaced by fresh
    ones; cycles are re-created through fresh bound variables.
    """
    bindings = src.setting.bindings
    renamed: dict[int, Var] = {}
    memo: dict[int, Term] = {}
    active: set[int] = set()
    back: dict[int, int] = {}  # bound var on a cycle -> fresh var standing for it
    out: list[Term] = []
    stack: list[tuple[int, object]] = [(_VISIT, src.term)]
    while stack:
        op, x = stack.pop()
        if op == _VISIT:
            if isinstance(x, Var):
                if x.id in memo:
                    out.append(memo[x.id])
                    continue
                b = bindings.get(x.id)
                if b is None:
                    if x.id < dst.scope:
                        out.append(x)
                    else:
                        if x.id not in renamed:
                            n, dst = dst.fresh()
                            renamed[x.id] = Var(n)
                        out.append(renamed[x.id])
                    continue
                if x.id in active:
                    if x.id not in back:
                        back[x.id], dst = dst.fresh()
                    out.append(Var(back[x.id]))
                    continue
                active.add(x.id)
                stack.append((_EXIT_VAR, x.id))
                stack.append((_VISIT, b))
            elif isinstance(x, Pair):
                stack.append((_MK_PAIR, x))
                stack.append((_VISIT, x.right))
                stack.append((_VISIT, x.left))
            elif isinstance(x, App) and x.args:
                stack.append((_MK_APP, x))
                stack.extend((_VISIT, a) for a in reversed(x.args))
            else:
                out.append(x)
        elif op == _EXIT_VAR:
            active.discard(x)
            if x in back:
                dst = dst.bind(back[x], out[-1])
                out[-1] = Var(back[x])
            memo[x] = out[-1]
        elif op == _MK_PAIR:
            right = out.pop()
            left = out.pop()
            out.append(Pair(left, right))
        else:
            n = len(x.args)
            args = tuple(out[-n:])
            del out[-n:]
            out.append(App(x.name, args))
    return out[0], dst


__all__ = [
    "Setting", "RationalTerm", "fresh", "unify", "resolve", "walk",
    "rational_equal", "entails", "equivalent", "transplant",
]
