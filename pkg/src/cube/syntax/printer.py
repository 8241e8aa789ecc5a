"""Render terms as source text.

Bindings are followed through the setting.  A bound variable met again
while its own binding is still being printed marks a cycle; the entry
point is then labelled, giving ``@1=f(@1)`` for the solution of
``X = f(X)``.  The walk uses an explicit work stack, so long lists and
deep chains of bindings print without recursion.
"""

from __future__ import annotations

from typing import Mapping, Optional

from ..setting import Setting
from ..term import Abs, App, Null, Pair, Term, Var
from .lexer import SYMBOL_CHARS
from .reader import INFIX, PREFIX

_SPACED = {";", "-;", "->", ":-"}
_EMPTY = Setting()


def _quote(name: str) -> str:
    if not name:
        return "''"
    if name[0].islower() and all(c.isalnum() or c == "_" for c in name):
        return name
    if name in ("!", ";") or (all(c in SYMBOL_CHARS for c in name) and name != "."):
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


def _atom_text(name) -> str:
    return str(name) if isinstance(name, int) else _quote(name)


def _is_operator(name) -> bool:
    return isinstance(name, str) and (name in INFIX or name in PREFIX or name in _STOPS)


_STOPS = {"!", "<-", "<>", "..", "::"}


class _Printer:
    def __init__(self, s: Setting, names: Mapping[int, str]):
        self.s = s
        self.names = names
        self.path: dict[int, Optional[int]] = {}
        self.counter = 0
        self.frags: list[str] = []
        self.guard = ""

    # -- output --------------------------------------------------------
    def emit(self, text: str):
        if not text:
            return
        if self.guard:
            if text[0] in self.guard:
                text = " " + text
            self.guard = ""
        self.frags.append(text)

    def placeholder(self) -> int:
        # a label may land here later, so keep it apart from an operator
        if self.guard:
            self.frags.append(" ")
            self.guard = ""
        self.frags.append("")
        return len(self.frags) - 1

    def var_name(self, v: int) -> str:
        return self.names.get(v) or f"_G{v}"

    def label(self, v: int) -> int:
        if self.path[v] is None:
            self.counter += 1
            self.path[v] = self.counter
        return self.path[v]

    # -- structure -----------------------------------------------------
    def spine(self, t: Pair):
        """Elements, var hops and tail of a pair chain."""
        elems: list[Term] = []
        hops: list[tuple[int, int]] = []
        local: set[int] = set()
        cur: Term = t
        while True:
            elems.append(cur.left)
            r = cur.right
            while isinstance(r, Var):
                b = self.s.lookup(r.id)
                if b is None or r.id in self.path or r.id in local:
                    break
                local.add(r.id)
                hops.append((len(elems), r.id))
                r = b
            if isinstance(r, Pair):
                cur = r
                continue
            return elems, hops, r

    def prec_of(self, t: Term) -> int:
        t = self.s.deref(t)
        if isinstance(t, App):
            name, n = t.name, len(t.args)
            if n == 2 and isinstance(name, str) and name in INFIX and name not in (",", "."):
                return INFIX[name][0]
            if n == 1 and isinstance(name, str) and name in PREFIX:
                if not (name == "-" and _is_number(self.s.deref(t.args[0]))):
                    return PREFIX[name][0]
            return 0
        if isinstance(t, Pair):
            return 0 if _is_list_end(self.spine_tail(t)) else 1000
        if isinstance(t, Abs):
            return 0
        return 0

    def spine_tail(self, t: Pair) -> Term:
        seen: set[int] = set()
        r: Term = t
        while True:
            r = r.right
            while isinstance(r, Var):
                b = self.s.lookup(r.id)
                if b is None or r.id in self.path or r.id in seen:
                    return r
                seen.add(r.id)
                r = b
            if not isinstance(r, Pair):
                return r

    def run(self, t: Term, max_prec: int) -> str:
        stack: list[tuple] = [("t", t, max_prec)]
        while stack:
            item = stack.pop()
            tag = item[0]
            if tag == "s":
                self.emit(item[1])
            elif tag == "guard":
                self.guard = item[1]
            elif tag == "t":
                self.term(item[1], item[2], stack)
            elif tag == "endvar":
                _, v, idx, maxp, inner = item
                lab = self.path.pop(v)
                if lab is not None:
                    pre, post = f"@{lab}=", ""
                    if inner > 699 and inner <= maxp:
                        pre += "("
                        post = ")"
                    if maxp < 700:
                        pre = "(" + pre
                        post += ")"
                    self.frags[idx] = pre
                    self.emit(post)
            elif tag == "hop":
                _, v, default, holder = item
                self.path[v] = None
                holder.append((v, self.placeholder(), default))
            elif tag == "unhop":
                _, holder, style = item
                for v, idx, default in reversed(holder):
                    lab = self.path.pop(v)
                    if lab is None:
                        self.frags[idx] = default
                    elif style == "list":
                        self.frags[idx] = f"|@{lab}=["
                        self.emit("]")
                    else:
                        self.frags[idx] = f"{default}@{lab}=("
                        self.emit(")")
        return "".join(self.frags)

    def term(self, t: Term, maxp: int, stack: list):
        if isinstance(t, Var):
            b = self.s.lookup(t.id)
            if b is None:
                self.emit(self.var_name(t.id))
            elif t.id in self.path:
                self.emit(f"@{self.label(t.id)}")
            else:
                self.path[t.id] = None
                idx = self.placeholder()
                stack.append(("endvar", t.id, idx, maxp, self.prec_of(b)))
                stack.append(("t", b, maxp))
            return
        if isinstance(t, Null):
            self.emit("[]")
            return
        if isinstance(t, Pair):
            self.pair(t, maxp, stack)
            return
        if isinstance(t, Abs):
            self.emit(f"\\{self.var_name(t.bound)}^(")
            stack.append(("s", ")"))
            stack.append(("t", t.body, 1200))
            return
        if isinstance(t, App):
            self.app(t, maxp, stack)
            return
        self.emit(repr(t))

    def app(self, t: App, maxp: int, stack: list):
        name, args = t.name, t.args
        if not args:
            text = _atom_text(name)
            # an operator atom as an operand is bracketed; as an argument
            # or list element (999) or on its own (1200) it is not
            if _is_operator(name) and maxp not in (999, 1200):
                text = f"({text})"
            self.emit(text)
            return
        todo: list[tuple] = []
        if len(args) == 2 and isinstance(name, str) and name in INFIX and name not in (",", "."):
            p, typ = INFIX[name]
            la = p - 1 if typ[0] == "x" else p
            ra = p - 1 if typ[2] == "x" else p
            wrap = p > maxp
            if wrap:
                todo.append(("s", "("))
            todo.append(("t", args[0], la))
            if name in _SPACED or name[0].isalpha():
                todo.append(("s", f" {name} "))
            else:
                todo.append(("s", name))
                todo.append(("guard", _SYMBOLS))
            todo.append(("t", args[1], ra))
            if wrap:
                todo.append(("s", ")"))
        elif (len(args) == 1 and isinstance(name, str) and name in PREFIX
              and not (name == "-" and _is_number(self.s.deref(args[0])))):
            p, typ = PREFIX[name]
            wrap = p > maxp
            if wrap:
                todo.append(("s", "("))
            if name[0].isalpha():
                todo.append(("s", f"{name} "))
            else:
                todo.append(("s", name))
                # "-(" would read as a functor, "- (" as an operator
                todo.append(("guard", _SYMBOLS + "("))
            todo.append(("t", args[0], p if typ == "fy" else p - 1))
            if wrap:
                todo.append(("s", ")"))
        else:
            todo.append(("s", _atom_text(name) + "("))
            for i, a in enumerate(args):
                if i:
                    todo.append(("s", ","))
                todo.append(("t", a, 999))
            todo.append(("s", ")"))
        stack.extend(reversed(todo))

    def pair(self, t: Pair, maxp: int, stack: list):
        elems, hops, tail = self.spine(t)
        as_list = _is_list_end(tail)
        hop_at = dict(hops)
        holder: list = []
        todo: list[tuple] = []
        if as_list:
            todo.append(("s", "["))
        wrap = not as_list and maxp < 1000
        if wrap:
            todo.append(("s", "("))
        for i, e in enumerate(elems):
            if i:
                if i in hop_at:
                    todo.append(("hop", hop_at[i], ",", holder))
                else:
                    todo.append(("s", ","))
            # 998 in comma form brackets operator atoms, as operands of ","
            todo.append(("t", e, 999 if as_list else 998))
        n = len(elems)
        if as_list:
            if n in hop_at:
                todo.append(("hop", hop_at[n], "", holder))
            if not isinstance(tail, Null):
                todo.append(("s", "|"))
                todo.append(("t", tail, 999))
            todo.append(("unhop", holder, "list"))
            todo.append(("s", "]"))
        else:
            if n in hop_at:
                todo.append(("hop", hop_at[n], ",", holder))
            else:
                todo.append(("s", ","))
            todo.append(("t", tail, 1000))
            todo.append(("unhop", holder, "conj"))
            if wrap:
                todo.append(("s", ")"))
        stack.extend(reversed(todo))


# ";" too, since "-" followed by ";" lexes as the single token "-;"
_SYMBOLS = "".join(sorted(SYMBOL_CHARS)) + ";"


def _is_number(t: Term) -> bool:
    return isinstance(t, App) and not t.args and isinstance(t.name, int)


def _is_list_end(tail: Term) -> bool:
    if isinstance(tail, Null):
        return True
    return isinstance(tail, Var)


def print_term(t: Term, s: Optional[Setting] = None,
               names: Optional[Mapping[int, str]] = None, max_prec: int = 1200) -> str:
    """Text of ``t`` read through ``s``; variables named from ``names``."""
    return _Printer(s or _EMPTY, names or {}).run(t, max_prec)


def format_solution(s: Setting, names: Mapping[str, int]) -> str:
    """``X = 1, Y = f(Z)`` for the named query variables, or ``true``."""
    by_id = {v: n for n, v in names.items()}
    parts = []
    for name, v in names.items():
        if name.startswith("_"):
            continue
        text = print_term(Var(v), s, by_id, 700)
        if text == name:
            continue
        parts.append(f"{name} = {text}")
    return ", ".join(parts) if parts else "true"
