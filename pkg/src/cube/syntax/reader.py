"""Operator-precedence reader for terms, Cube programs and Prolog clauses."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import CubeSyntaxError, DuplicateProcedure
from ..term import NULL, App, Pair, Term, Var, make_list
from .lexer import Token, tokenize

# name -> (priority, type)
INFIX: dict[str, tuple[int, str]] = {
    ":-": (1200, "xfx"),
    ";": (1100, "xfy"),
    "-;": (1100, "xfy"),
    "->": (1050, "xfy"),
    ",": (1000, "xfy"),
    "until": (990, "xfx"),
    "unless": (990, "xfx"),
    "=": (700, "xfx"),
    "is": (700, "xfx"),
    "in": (700, "xfx"),
    "<": (700, "xfx"),
    ">": (700, "xfx"),
    "=<": (700, "xfx"),
    ">=": (700, "xfx"),
    "=:=": (700, "xfx"),
    "=\\=": (700, "xfx"),
    "+": (500, "yfx"),
    "-": (500, "yfx"),
    "*": (400, "yfx"),
    "/": (400, "yfx"),
    "//": (400, "yfx"),
    "mod": (400, "yfx"),
    ".": (350, "xfy"),
}

PREFIX: dict[str, tuple[int, str]] = {
    "?-": (1200, "fx"),
    "not": (900, "fy"),
    "possible": (900, "fy"),
    "-": (200, "fy"),
}

TRUE = App("true")

# tokens that end a clause body or head in Cube source
_CLAUSE_STOPS = ("<-", "<>", "!", "..")


@dataclass(frozen=True)
class Inclusive:
    body: Term


@dataclass(frozen=True)
class Exclusive:
    cond: Term
    body: Term


ClauseKind = Union[Inclusive, Exclusive]


@dataclass(frozen=True)
class ClauseSrc:
    head_args: tuple
    kind: ClauseKind
    locals: tuple = ()


@dataclass(frozen=True)
class ProcedureSrc:
    name: object
    clauses: tuple


@dataclass(frozen=True)
class PrologClause:
    head: Term
    body: Term = TRUE
    nvars: int = 0


@dataclass
class Query:
    """A parsed goal plus the names of its variables (ids 0..n-1)."""

    term: Term
    names: dict[str, int] = field(default_factory=dict)
    nvars: int = 0


class Reader:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0
        self.reset_vars()

    # -- token helpers -------------------------------------------------
    def peek(self, k: int = 0) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def error(self, msg: str, tok: Optional[Token] = None):
        tok = tok or self.peek()
        raise CubeSyntaxError(msg, tok.line, tok.column)

    def expect_punct(self, value: str):
        tok = self.advance()
        if not tok.is_punct(value):
            self.error(f"expected {value!r}, found {_describe(tok)}", tok)

    def expect_end(self):
        tok = self.advance()
        if tok.kind != "end":
            self.error(f"expected end of clause, found {_describe(tok)}", tok)

    def at_eof(self) -> bool:
        return self.peek().kind == "eof"

    # -- variables -----------------------------------------------------
    def reset_vars(self):
        self.var_ids: dict[str, int] = {}
        self.order: list[int] = []
        self.next_id = 0

    def variable(self, name: str) -> Var:
        if name != "_" and name in self.var_ids:
            return Var(self.var_ids[name])
        v = self.next_id
        self.next_id += 1
        self.order.append(v)
        if name != "_":
            self.var_ids[name] = v
        return Var(v)

    # -- terms ---------------------------------------------------------
    def parse(self, max_prec: int = 1200) -> Term:
        left, lprec = self.primary(max_prec)
        return self.infix(left, lprec, max_prec)

    def infix(self, left: Term, lprec: int, max_prec: int) -> Term:
        while True:
            tok = self.peek()
            name = _infix_name(tok)
            if name is None:
                return left
            p, typ = INFIX[name]
            if p > max_prec:
                return left
            la = p - 1 if typ[0] == "x" else p
            ra = p - 1 if typ[2] == "x" else p
            if lprec > la:
                return left
            self.advance()
            right = self.parse(ra)
            left = Pair(left, right) if name in (",", ".") else App(name, (left, right))
            lprec = p

    def primary(self, max_prec: int) -> tuple[Term, int]:
        tok = self.advance()
        kind = tok.kind
        if kind == "int":
            return App(tok.value), 0
        if kind == "var":
            return self.variable(tok.value), 0
        if kind == "punct":
            if tok.value == "(":
                t = self.parse(1200)
                self.expect_punct(")")
                return t, 0
            if tok.value == "[":
                return self.list_tail(), 0
            self.error(f"unexpected {_describe(tok)}", tok)
        if kind == "name":
            name = tok.value
            nxt = self.peek()
            if nxt.is_punct("(") and not nxt.layout_before:
                self.advance()
                args = [self.parse(999)]
                while self.peek().is_punct(","):
                    self.advance()
                    args.append(self.parse(999))
                self.expect_punct(")")
                return App(name, tuple(args)), 0
            if not tok.quoted:
                if name == "-" and nxt.kind == "int" and not nxt.layout_before:
                    self.advance()
                    return App(-nxt.value), 0
                if name in PREFIX and self.starts_term(nxt):
                    p, typ = PREFIX[name]
                    p = min(p, max_prec)
                    arg = self.parse(p if typ == "fy" else p - 1)
                    return App(name, (arg,)), p
            return App(name), 0
        if kind == "end":
            self.error("unexpected end of clause", tok)
        self.error("unexpected end of input", tok)

    def starts_term(self, tok: Token) -> bool:
        if tok.kind in ("int", "var"):
            return True
        if tok.kind == "punct":
            return tok.value in ("(", "[")
        if tok.kind == "name":
            if tok.quoted:
                return True
            nxt = self.peek(1)
            if nxt.is_punct("(") and not nxt.layout_before:
                return True
            if tok.value in _CLAUSE_STOPS or tok.value == "::":
                return False
            return tok.value not in INFIX or tok.value in PREFIX
        return False

    def list_tail(self) -> Term:
        if self.peek().is_punct("]"):
            self.advance()
            return NULL
        items = [self.parse(999)]
        while self.peek().is_punct(","):
            self.advance()
            items.append(self.parse(999))
        tail = NULL
        if self.peek().is_punct("|"):
            self.advance()
            tail = self.parse(999)
        self.expect_punct("]")
        return make_list(items, tail)

    # -- Cube programs -------------------------------------------------
    def program(self) -> list[ProcedureSrc]:
        groups: list[tuple[object, list[ClauseSrc], bool]] = []
        while not self.at_eof():
            tok = self.peek()
            if tok.kind == "name" and self.peek(1).is_name("::"):
                self.advance()
                self.advance()
                clauses = [self.cube_clause()]
                while self.peek().is_name(".."):
                    self.advance()
                    clauses.append(self.cube_clause())
                self.expect_end()
                groups.append((tok.value, clauses, True))
            else:
                self.reset_vars()
                head = self.parse(999)
                if not isinstance(head, App) or not isinstance(head.name, str):
                    self.error("clause head must be an atom or compound term", tok)
                clause = self.clause_tail(head.args)
                self.expect_end()
                last = groups[-1] if groups else None
                if last is not None and not last[2] and last[0] == head.name:
                    last[1].append(clause)
                else:
                    groups.append((head.name, [clause], False))
        seen: set = set()
        out = []
        for name, clauses, _ in groups:
            if name in seen:
                raise DuplicateProcedure(f"procedure {name} is defined in more than one place")
            seen.add(name)
            out.append(ProcedureSrc(name, tuple(clauses)))
        return out

    def cube_clause(self) -> ClauseSrc:
        self.reset_vars()
        args = []
        if not self.at_clause_stop():
            args.append(self.parse(999))
            while self.peek().is_punct(","):
                self.advance()
                args.append(self.parse(999))
        return self.clause_tail(tuple(args))

    def at_clause_stop(self) -> bool:
        tok = self.peek()
        return tok.kind in ("end", "eof") or (tok.kind == "name" and tok.is_name(*_CLAUSE_STOPS))

    def clause_tail(self, args: tuple) -> ClauseSrc:
        tok = self.peek()
        if tok.is_name("<-"):
            self.advance()
            body = self.parse(1200)
            if self.peek().is_name("<>"):
                self.advance()
                kind: ClauseKind = Exclusive(body, self.parse(1200))
            else:
                kind = Inclusive(body)
        elif tok.is_name("<>"):
            self.advance()
            kind = Exclusive(TRUE, self.parse(1200))
        elif tok.is_name("!"):
            self.advance()
            kind = Exclusive(TRUE, TRUE)
        elif tok.kind == "end" or tok.is_name(".."):
            kind = Inclusive(TRUE)
        else:
            self.error(f"unexpected {_describe(tok)} in clause")
        return ClauseSrc(tuple(args), kind, tuple(self.order))

    # -- Prolog clauses ------------------------------------------------
    def prolog(self) -> list[PrologClause]:
        out = []
        while not self.at_eof():
            self.reset_vars()
            tok = self.peek()
            t = self.parse(1200)
            self.expect_end()
            if isinstance(t, App) and t.name == ":-" and len(t.args) == 2:
                head, body = t.args
            else:
                head, body = t, TRUE
            if not isinstance(head, App) or not isinstance(head.name, str):
                self.error("clause head must be an atom or compound term", tok)
            out.append(PrologClause(head, body, self.next_id))
        return out


def _infix_name(tok: Token) -> Optional[str]:
    if tok.kind == "punct" and tok.value == ",":
        return ","
    if tok.kind == "name" and not tok.quoted and tok.value in INFIX:
        return tok.value
    return None


def _describe(tok: Token) -> str:
    if tok.kind == "eof":
        return "end of input"
    if tok.kind == "end":
        return "end of clause"
    return repr(tok.value)


def parse_term(text: str) -> Term:
    return parse_query(text).term


def parse_query(text: str) -> Query:
    r = Reader(text)
    t = r.parse(1200)
    if r.peek().kind == "end":
        r.advance()
    if not r.at_eof():
        r.error(f"unexpected {_describe(r.peek())} after term")
    return Query(t, dict(r.var_ids), r.next_id)


def parse_program(text: str) -> list[ProcedureSrc]:
    return Reader(text).program()


def parse_prolog(text: str) -> list[PrologClause]:
    return Reader(text).prolog()
