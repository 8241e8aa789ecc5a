"""A second rational-tree unifier, written independently of the engine's.

Settings here are plain ``(scope, dict)`` pairs.  Unification runs the
classic union-find closure over term nodes (Huet): classes are merged
before their children are compared, which is what makes cyclic inputs
terminate.  The merged classes are then read back as fresh bindings,
with the smallest variable of each class as its representative.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..term import Abs, App, Null, Pair, Term, Var


@dataclass(frozen=True)
class OSetting:
    scope: int
    bindings: dict = field(default_factory=dict)

    def fresh(self, k: int = 1) -> tuple[list[int], "OSetting"]:
        return list(range(self.scope, self.scope + k)), OSetting(self.scope + k, self.bindings)

    def deref(self, t: Term) -> Term:
        seen = set()
        while isinstance(t, Var) and t.id in self.bindings and t.id not in seen:
            seen.add(t.id)
            t = self.bindings[t.id]
        return t


def _key(t: Term):
    return ("v", t.id) if isinstance(t, Var) else ("n", id(t))


def ounify(s: OSetting, a: Term, b: Term) -> Optional[OSetting]:
    parent: dict = {}
    schema: dict = {}  # class root -> a non-variable member
    members_vars: dict = {}  # class root -> set of var ids
    nodes: list = []  # keeps node objects alive while their ids are keys

    def find(k):
        root = k
        while parent.get(root, root) != root:
            root = parent[root]
        while parent.get(k, k) != root:
            parent[k], k = root, parent[k]
        return root

    def node(t: Term):
        k = _key(t)
        if k not in parent:
            parent[k] = k
            if isinstance(t, Var):
                members_vars[k] = {t.id}
            else:
                nodes.append(t)
                schema[k] = t
                members_vars[k] = set()
        return k

    pending = []
    for v, t in s.bindings.items():
        pending.append((Var(v), t))
    pending.append((a, b))

    while pending:
        x, y = pending.pop()
        for t in (x, y):
            if isinstance(t, Abs):
                raise ValueError("abstraction in unification")
        rx, ry = find(node(x)), find(node(y))
        if rx == ry:
            continue
        tx, ty = schema.get(rx), schema.get(ry)
        parent[ry] = rx
        members_vars[rx] |= members_vars.pop(ry)
        if tx is None:
            if ty is not None:
                schema[rx] = ty
            schema.pop(ry, None)
            continue
        schema.pop(ry, None)
        if ty is None:
            continue
        if isinstance(tx, Null) and isinstance(ty, Null):
            continue
        if isinstance(tx, Pair) and isinstance(ty, Pair):
            pending.append((tx.left, ty.left))
            pending.append((tx.right, ty.right))
            continue
        if isinstance(tx, App) and isinstance(ty, App):
            if type(tx.name) is not type(ty.name) or tx.name != ty.name:
                return None
            if len(tx.args) != len(ty.args):
                return None
            pending.extend(zip(tx.args, ty.args))
            continue
        return None

    out: dict = {}
    for k in list(parent):
        if find(k) != k:
            continue
        vs = sorted(members_vars.get(k, ()))
        if not vs:
            continue
        rep = vs[0]
        for v in vs[1:]:
            out[v] = Var(rep)
        t = schema.get(k)
        if t is not None:
            out[rep] = t
    return OSetting(s.scope, out)


def owalk(s: OSetting, t: Term) -> Optional[Term]:
    """Substitute bindings fully; ``None`` if the term is cyclic."""

    def go(t, active):
        if isinstance(t, Var):
            if t.id in active:
                raise _Cyclic
            b = s.bindings.get(t.id)
            if b is None:
                return t
            return go(b, active | {t.id})
        if isinstance(t, Pair):
            return Pair(go(t.left, active), go(t.right, active))
        if isinstance(t, App) and t.args:
            return App(t.name, tuple(go(x, active) for x in t.args))
        return t

    try:
        return go(t, frozenset())
    except _Cyclic:
        return None


class _Cyclic(Exception):
    pass
