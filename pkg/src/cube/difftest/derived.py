"""Derived control constructs paired with their ``until``-only encodings.

Each case is a setup goal followed by one construct, once in native form
and once spelled out with ``until``.  The fresh flag variables ``R1``..
only occur in the encoded text and come after the shared variables, so
both readings agree on the ids of ``X`` and ``Y``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .gen import GenConfig, GoalWriter

KINDS = ("ite", "unless", "once", "not", "var")
SHARED = ("X", "Y")


class _Flags:
    def __init__(self):
        self.n = 0

    def new(self) -> str:
        self.n += 1
        return f"R{self.n}"


def enc_ite(c: str, t: str, e: str, flags: _Flags) -> str:
    r = flags.new()
    return f"((({c}), {r}=t ; {r}=e) until true, ({r}=t, ({t}) ; {r}=e, ({e})))"


def enc_unless(a: str, b: str, flags: _Flags) -> str:
    r = flags.new()
    return f"((({a}) until (({b}), {r}=f)), {r}=s)"


def enc_once(g: str) -> str:
    return f"(({g}) until true)"


def enc_not(g: str, flags: _Flags) -> str:
    r = flags.new()
    return f"((({g}), {r}=t ; {r}=f) until true, {r}=f)"


def enc_var(x: str, flags: _Flags) -> str:
    a = enc_not(enc_not(f"{x} = '$var_probe_a'", flags), flags)
    b = enc_not(enc_not(f"{x} = '$var_probe_b'", flags), flags)
    return f"({a}, {b})"


@dataclass
class DerivedCase:
    kind: str
    native: str
    encoded: str


def derived_case(rng: random.Random, procs: list, cfg: GenConfig, kind: str,
                 depth: int = 2) -> DerivedCase:
    w = GoalWriter(rng, procs, cfg)
    flags = _Flags()

    def g():
        # half the operands are disjunctions, so conditions often have
        # several solutions and pruning has something to cut
        if rng.random() < 0.5:
            return f"({w.goal(SHARED, depth - 1, 0)} ; {w.goal(SHARED, depth - 1, 0)})"
        return w.goal(SHARED, depth, 0)

    setup = rng.choice(("true", f"X = {w.term(SHARED)}", g()))
    if kind == "ite":
        c, t, e = g(), g(), g()
        native, encoded = f"(({c}) -> ({t}) -; ({e}))", enc_ite(c, t, e, flags)
    elif kind == "unless":
        a, b = g(), g()
        native, encoded = f"(({a}) unless ({b}))", enc_unless(a, b, flags)
    elif kind == "once":
        x = g()
        native, encoded = f"once(({x}))", enc_once(x)
    elif kind == "not":
        x = g()
        native, encoded = f"not(({x}))", enc_not(x, flags)
    else:
        x = rng.choice(SHARED)
        native, encoded = f"var({x})", enc_var(x, flags)
    head = "X = X, Y = Y, "
    return DerivedCase(kind, f"{head}({setup}), {native}", f"{head}({setup}), {encoded}")


__all__ = ["KINDS", "DerivedCase", "derived_case", "enc_ite", "enc_unless", "enc_once",
           "enc_not", "enc_var"]
