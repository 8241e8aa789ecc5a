"""Batch runner and interactive top level.

    cube [files...] -q GOAL [--fuel N] [--freevar fail|error] [--no-prelude]

Without ``-q`` an interactive loop starts.  Exit codes of a batch run:
0 solutions found, 1 no solutions, 2 uncaught exception, 3 fuel ran out,
4 a file or the goal could not be read or loaded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional, TextIO

from .engine import EvalConfig, FreeVarPolicy, Program, evaluate
from .errors import CubeError
from .outcome import EXHAUSTED, Cons, Raise, force
from .setting import Setting
from .stdlib import standard_program
from .syntax import format_solution, parse_program, parse_prolog, parse_query, print_term

EXIT_OK, EXIT_NO, EXIT_EXCEPTION, EXIT_EXHAUSTED, EXIT_LOAD = range(5)


@dataclass
class SessionState:
    program: Program
    config: EvalConfig = field(default_factory=EvalConfig)
    loaded: list = field(default_factory=list)
    # procedure names contributed by each .cube file, for reloads
    owned: dict = field(default_factory=dict)

    def load(self, path: str, prolog: Optional[bool] = None) -> None:
        """Load a file; on any error the program is left untouched."""
        text = Path(path).read_text(encoding="utf-8")
        if prolog is None:
            prolog = path.endswith(".pl")
        new = self.program.copy()
        if prolog:
            new.add_clauses(parse_prolog(text))
            names = set()
        else:
            procs = parse_program(text)
            for name in self.owned.get(path, ()):
                new.procedures.pop(name, None)
            new.add_procedures(procs)
            names = {p.name for p in procs}
        self.program = new
        self.owned[path] = names
        if path not in self.loaded:
            self.loaded.append(path)


@dataclass
class Answer:
    kind: str  # "solution", "no", "exception", "exhausted"
    text: str = ""


def answers(state: SessionState, goal: str) -> Iterator[Answer]:
    """Lazily produce the answers of ``goal``, ending with a final marker."""
    q = parse_query(goal)
    o = evaluate(q.term, Setting(q.nvars), state.program, state.config)
    while True:
        o = force(o)
        if isinstance(o, Cons):
            yield Answer("solution", format_solution(o.head, q.names))
            o = o.tail
            continue
        if o is EXHAUSTED:
            yield Answer("exhausted", "budget exhausted")
        elif isinstance(o, Raise):
            yield Answer("exception", "uncaught exception: " + print_term(o.payload.term, o.payload.setting))
        else:
            yield Answer("no", "no")
        return


def run_file(paths: list, query: str, config: EvalConfig, out: TextIO = sys.stdout,
             err: TextIO = sys.stderr, with_prelude: bool = True,
             limit: Optional[int] = None) -> int:
    state = SessionState(standard_program(with_prelude), config)
    try:
        for p in paths:
            state.load(p)
        stream = answers(state, query)
        count = 0
        for a in stream:
            if a.kind == "solution":
                count += 1
                print(a.text, file=out)
                if limit is not None and count >= limit:
                    return EXIT_OK
                continue
            if a.kind == "exception":
                print(a.text, file=out)
                return EXIT_EXCEPTION
            if a.kind == "exhausted":
                print(a.text, file=out)
                return EXIT_EXHAUSTED
            return EXIT_OK if count else EXIT_NO
    except (CubeError, OSError) as e:
        print(f"error: {e}", file=err)
        return EXIT_LOAD
    return EXIT_NO


HELP = """commands:
  ?- Goal.            run a goal; ';' for the next answer, Enter to stop
  :load FILE          load a .cube program (or .pl clause database)
  :loadpl FILE        load a Prolog clause database
  :set fuel N         set the step budget
  :set freevar fail|error
  :quit"""


def repl(state: SessionState, inp: TextIO = sys.stdin, out: TextIO = sys.stdout) -> int:
    def say(text: str = "", end: str = "\n"):
        out.write(text + end)
        out.flush()

    while True:
        say("?- ", end="")
        line = inp.readline()
        if not line:
            say()
            return EXIT_OK
        line = line.strip()
        if not line:
            continue
        if line.startswith(":"):
            if not command(state, line, say):
                return EXIT_OK
            continue
        if line.startswith("?-"):
            line = line[2:].strip()
        try:
            stream = answers(state, line)
            for a in stream:
                if a.kind != "solution":
                    say(a.text)
                    break
                say(a.text, end=" ")
                reply = inp.readline()
                if reply.strip() != ";":
                    say()
                    stream.close()
                    break
        except CubeError as e:
            say(f"error: {e}")


def command(state: SessionState, line: str, say) -> bool:
    parts = line.split()
    cmd, args = parts[0], parts[1:]
    try:
        if cmd == ":quit":
            return False
        if cmd in (":load", ":loadpl") and len(args) == 1:
            state.load(args[0], prolog=True if cmd == ":loadpl" else None)
            say(f"loaded {args[0]}")
        elif cmd == ":set" and len(args) == 2 and args[0] == "fuel":
            state.config.fuel = int(args[1])
        elif cmd == ":set" and len(args) == 2 and args[0] == "freevar":
            state.config.free_var_policy = FreeVarPolicy(args[1])
        elif cmd == ":help":
            say(HELP)
        else:
            say(f"unknown command: {line}")
    except (CubeError, OSError, ValueError) as e:
        say(f"error: {e}")
    return True


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="cube", description="Run Cube programs.")
    ap.add_argument("files", nargs="*", help=".cube programs and .pl clause databases")
    ap.add_argument("-q", "--query", help="goal to run; starts the interactive loop if absent")
    ap.add_argument("--fuel", type=int, default=EvalConfig.fuel, help="step budget")
    ap.add_argument("--freevar", choices=["fail", "error"], default="fail",
                    help="what an unbound variable does when run as a goal")
    ap.add_argument("--no-prelude", action="store_true", help="start from an empty program")
    ap.add_argument("--limit", type=int, default=None, help="stop after this many solutions")
    return ap


def main(argv: Optional[list] = None, stdin: TextIO = None, stdout: TextIO = None,
         stderr: TextIO = None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    config = EvalConfig(fuel=args.fuel, free_var_policy=FreeVarPolicy(args.freevar))
    if args.query is not None:
        return run_file(args.files, args.query, config, stdout, stderr,
                        not args.no_prelude, args.limit)
    state = SessionState(standard_program(not args.no_prelude), config)
    try:
        for p in args.files:
            state.load(p)
    except (CubeError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_LOAD
    return repl(state, stdin, stdout)


if __name__ == "__main__":
    sys.exit(main())
