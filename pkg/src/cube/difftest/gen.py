"""Seeded random Cube programs and goals over a tiny signature."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..engine import Program
from ..syntax.reader import parse_program, parse_query

CONSTANTS = ("a", "b", "c", "0", "1", "2", "3")
CONSTRUCTS = ("=", ",", ";", "until", "unless", "ite", "call")


@dataclass
class GenConfig:
    seed: int = 0
    min_procs: int = 2
    max_procs: int = 4
    max_clauses: int = 3
    max_body_depth: int = 3
    max_arity: int = 2
    recursive: bool = True
    constructs: tuple = CONSTRUCTS
    exceptions: bool = False
    metacall: bool = False
    queries: int = 3
    query_vars: tuple = ("X", "Y")


@dataclass
class GeneratedProgram:
    source: str
    procedures: list
    queries: list = field(default_factory=list)  # of Query

    @property
    def program(self) -> Program:
        p = Program()
        p.add_procedures(self.procedures)
        return p


class GoalWriter:
    """Writes random goal text; every compound goal is parenthesized."""

    def __init__(self, rng: random.Random, procs: list, cfg: GenConfig):
        self.rng = rng
        self.procs = procs  # (name, arity)
        self.cfg = cfg

    def term(self, vars_: tuple, depth: int = 1) -> str:
        r = self.rng.random()
        if vars_ and r < 0.4:
            return self.rng.choice(vars_)
        if depth > 0 and r < 0.55:
            return f"f({self.term(vars_, depth - 1)})"
        if depth > 0 and r < 0.62:
            return f"[{self.term(vars_, 0)}|{self.term(vars_, 0)}]"
        return self.rng.choice(CONSTANTS)

    def call(self, vars_: tuple, callable_from: int) -> str:
        choices = self.procs[callable_from:]
        if not choices:
            return self.rng.choice(("true", "fail"))
        name, arity = self.rng.choice(choices)
        if arity == 0:
            return name
        return f"{name}({', '.join(self.term(vars_) for _ in range(arity))})"

    def goal(self, vars_: tuple, depth: int, callable_from: int = 0) -> str:
        rng, cfg = self.rng, self.cfg
        leaves = ["="] * 3 + ["true", "fail"]
        if "call" in cfg.constructs:
            leaves += ["call"] * 3
        if cfg.exceptions:
            leaves.append("throw")
        nodes = [c for c in cfg.constructs if c in (",", ";", "until", "unless", "ite")]
        if cfg.exceptions:
            nodes.append("catch")
        if cfg.metacall:
            nodes.append("meta")
        if depth <= 0 or not nodes or rng.random() < 0.35:
            kind = rng.choice(leaves)
            if kind == "=":
                return f"{self.term(vars_)} = {self.term(vars_)}"
            if kind == "call":
                return self.call(vars_, callable_from)
            if kind == "throw":
                return f"throw(e({self.term(vars_, 0)}))"
            return kind
        kind = rng.choice(nodes)

        def sub():
            return self.goal(vars_, depth - 1, callable_from)

        if kind == ",":
            return f"({sub()} , {sub()})"
        if kind == ";":
            return f"({sub()} ; {sub()})"
        if kind in ("until", "unless"):
            return f"(({sub()}) {kind} ({sub()}))"
        if kind == "ite":
            return f"({sub()} -> {sub()} -; {sub()})"
        if kind == "catch":
            return f"catch(({sub()}), e({self.term(vars_, 0)}), ({sub()}))"
        v = rng.choice(vars_) if vars_ else "T"
        return f"({v} = ({sub()}), {v})"


def gen_program(cfg: GenConfig) -> GeneratedProgram:
    """A random program and queries; the same seed gives the same program."""
    rng = random.Random(cfg.seed)
    names = ["p", "q", "r", "t"]
    n = rng.randint(cfg.min_procs, cfg.max_procs)
    procs = [(names[i], rng.randint(0, cfg.max_arity)) for i in range(n)]
    w = GoalWriter(rng, procs, cfg)
    clause_vars = ("X", "Y", "Z")
    lines = []
    for i, (name, arity) in enumerate(procs):
        callable_from = 0 if cfg.recursive else i + 1
        clauses = []
        for _ in range(rng.randint(1, cfg.max_clauses)):
            head = ", ".join(w.term(clause_vars) for _ in range(arity))
            form = rng.choice(("fact", "if", "iff", "iff", "bang", "then"))
            depth = rng.randint(0, cfg.max_body_depth)
            if form == "fact":
                clauses.append(f"{head}")
            elif form == "if":
                clauses.append(f"{head} <- {w.goal(clause_vars, depth, callable_from)}")
            elif form == "iff":
                c = w.goal(clause_vars, max(depth - 1, 0), callable_from)
                b = w.goal(clause_vars, depth, callable_from)
                clauses.append(f"{head} <- {c} <> {b}")
            elif form == "bang":
                clauses.append(f"{head} !")
            else:
                clauses.append(f"{head} <> {w.goal(clause_vars, depth, callable_from)}")
        lines.append(f"{name}\n::  " + "\n..  ".join(clauses) + ".\n")
    source = "\n".join(lines)
    procedures = parse_program(source)
    queries = []
    for _ in range(cfg.queries):
        k = rng.randint(0, len(cfg.query_vars))
        qv = cfg.query_vars[:k]
        if rng.random() < 0.6:
            text = w.call(qv, 0)
        else:
            text = w.goal(qv, 2, 0)
        queries.append(parse_query(text))
    return GeneratedProgram(source, procedures, queries)


def gen_goal(rng: random.Random, procs: list, cfg: GenConfig, vars_=("X", "Y"),
             depth: int = 2) -> str:
    return GoalWriter(rng, procs, cfg).goal(tuple(vars_), depth, 0)


__all__ = ["GenConfig", "GeneratedProgram", "GoalWriter", "gen_program", "gen_goal",
           "CONSTANTS", "CONSTRUCTS"]
