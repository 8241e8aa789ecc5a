"""Reading and printing Cube and Prolog source."""

from .lexer import Token, tokenize
from .printer import format_solution, print_term
from .reader import (
    INFIX, PREFIX, TRUE, ClauseSrc, Exclusive, Inclusive, ProcedureSrc, PrologClause,
    Query, parse_program, parse_prolog, parse_query, parse_term,
)

__all__ = [
    "Token", "tokenize", "print_term", "format_solution", "INFIX", "PREFIX", "TRUE",
    "ClauseSrc", "Exclusive", "Inclusive", "ProcedureSrc", "PrologClause", "Query",
    "parse_program", "parse_prolog", "parse_query", "parse_term",
]
