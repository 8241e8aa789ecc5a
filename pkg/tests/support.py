"""Small helpers shared by the test modules."""

from __future__ import annotations

from pathlib import Path

from cube.engine import EvalConfig, Evaluator, Program
from cube.outcome import take
from cube.setting import Setting
from cube.stdlib import standard_program
from cube.syntax import format_solution, parse_program, parse_query

PROGRAMS = Path(__file__).resolve().parent.parent / "programs"


def example(name: str) -> str:
    """Path of a file in the ``programs`` directory."""
    return str(PROGRAMS / name)


def example_text(name: str) -> str:
    return (PROGRAMS / name).read_text()


def program(src: str = "", prelude: bool = True) -> Program:
    p = standard_program(prelude)
    if src:
        p.add_procedures(parse_program(src))
    return p


def run(goal: str, prog: Program = None, fuel: int = 10**6, limit: int = 100, **kw):
    """Solutions (as settings), final outcome and the parsed query."""
    prog = prog if prog is not None else program()
    q = parse_query(goal)
    o = Evaluator(prog, EvalConfig(fuel=fuel, **kw)).eval(q.term, Setting(q.nvars))
    sols, final = take(o, limit)
    return sols, final, q


def shown(goal: str, prog: Program = None, **kw) -> list[str]:
    sols, _, q = run(goal, prog, **kw)
    return [format_solution(s, q.names) for s in sols]
