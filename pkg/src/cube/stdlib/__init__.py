"""The prelude and the Prolog meta-interpreter, shipped as Cube source."""

from __future__ import annotations

from functools import lru_cache
from importlib.resources import files

from ..engine import Program
from ..syntax.reader import ProcedureSrc, parse_program


def source(name: str) -> str:
    return files(__package__).joinpath(name).read_text(encoding="utf-8")


@lru_cache(maxsize=None)
def _parsed(name: str) -> tuple[ProcedureSrc, ...]:
    return tuple(parse_program(source(name)))


def prelude() -> list[ProcedureSrc]:
    return list(_parsed("prelude.cube"))


def prolog_meta() -> list[ProcedureSrc]:
    return list(_parsed("meta.cube"))


def standard_program(with_prelude: bool = True) -> Program:
    """A fresh program, with the prelude and meta-interpreter unless disabled."""
    program = Program()
    if with_prelude:
        program.add_procedures(prelude() + prolog_meta())
    return program


__all__ = ["prelude", "prolog_meta", "standard_program", "source"]
