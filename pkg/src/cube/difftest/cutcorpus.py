"""Cut-using Prolog programs, run two ways and compared as transcripts.

Each ``corpus/NAME.pl`` holds a clause database followed by ``%? Goal``
lines.  A transcript lists, per goal, ``?- Goal``, one line per solution
and a final line (``no``, ``exhausted`` or ``exception: T``).  The frozen
``NAME.expected`` transcripts were produced by :func:`sld_transcript`.
"""

from __future__ import annotations

from importlib.resources import files

from ..engine import EvalConfig, Evaluator
from ..outcome import EXHAUSTED, FAIL, Raise, take
from ..setting import Setting
from ..stdlib import standard_program
from ..syntax.printer import format_solution, print_term
from ..syntax.reader import parse_prolog, parse_query
from ..term import App
from .oracle import TRUNCATED
from .sld import sld_cut_eval

SLD_DEPTH = 200
MAX_SOLUTIONS = 50


def _dir():
    return files(__package__).joinpath("corpus")


def names() -> list[str]:
    return sorted(p.name[:-3] for p in _dir().iterdir() if p.name.endswith(".pl"))


def source(name: str) -> str:
    return _dir().joinpath(name + ".pl").read_text(encoding="utf-8")


def goals(text: str) -> list[str]:
    return [ln[2:].strip() for ln in text.splitlines() if ln.startswith("%?")]


def expected(name: str) -> str:
    return _dir().joinpath(name + ".expected").read_text(encoding="utf-8")


def _final_line(final) -> str:
    if final is FAIL:
        return "no"
    if final is EXHAUSTED:
        return "exhausted"
    if final is TRUNCATED or final is None:
        return "more"
    return "exception: " + print_term(final.payload.term, final.payload.setting)


def _transcript(goal: str, sols, final, names_) -> list[str]:
    out = [f"?- {goal}"]
    out += [format_solution(s, names_) for s in sols]
    out.append(_final_line(final))
    return out


def sld_transcript(name: str) -> str:
    text = source(name)
    db = parse_prolog(text)
    lines = []
    for g in goals(text):
        q = parse_query(g)
        r = sld_cut_eval(db, q.term, SLD_DEPTH, nvars=q.nvars, cap=MAX_SOLUTIONS)
        final = r.final_outcome()
        lines += _transcript(g, r.settings(), final, q.names)
    return "\n".join(lines) + "\n"


def meta_transcript(name: str, fuel: int = 10**7) -> str:
    """The same goals run through ``execute/1`` over the clause database."""
    text = source(name)
    program = standard_program()
    program.add_clauses(parse_prolog(text))
    lines = []
    for g in goals(text):
        q = parse_query(g)
        task = App("execute", (q.term,))
        o = Evaluator(program, EvalConfig(fuel=fuel)).eval(task, Setting(q.nvars))
        sols, final = take(o, MAX_SOLUTIONS)
        if isinstance(final, Raise) or final is None:
            final = final if final is not None else TRUNCATED
        lines += _transcript(g, sols, final, q.names)
    return "\n".join(lines) + "\n"


__all__ = ["names", "source", "goals", "expected", "sld_transcript", "meta_transcript"]
