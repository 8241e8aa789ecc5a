"""Seeded differential runs of the engine against the reference evaluator."""

from __future__ import annotations

from ..engine import EvalConfig, Evaluator
from ..outcome import take
from ..setting import Setting
from .compare import mismatch
from .gen import GenConfig, gen_program
from .oracle import oracle_eval

ENGINE_FUEL = 10**7


def config_for_seed(seed: int) -> GenConfig:
    """The generator settings used for a given seed of the sweep."""
    return GenConfig(seed=seed, exceptions=seed % 2 == 0, metacall=seed % 3 == 0)


def depth_for_seed(seed: int) -> int:
    return 3 + seed % 5


def engine_vs_oracle(seed: int, limit: int = 100) -> list[str]:
    """Mismatch reports for every query of the seed's program (empty if none).

    Calls are cut off at the same nesting depth on both sides, so the two
    compute the same approximant and must agree exactly.
    """
    g = gen_program(config_for_seed(seed))
    prog = g.program
    depth = depth_for_seed(seed)
    problems = []
    for q in g.queries:
        s = Setting(q.nvars)
        ev = Evaluator(prog, EvalConfig(fuel=ENGINE_FUEL, max_depth=depth))
        sols, final = take(ev.eval(q.term, s), limit)
        ref = oracle_eval(q.term, s, prog, depth, cap=limit)
        m = mismatch(sols, final, ref.settings(), ref.final_outcome(),
                     range(q.nvars), q.nvars)
        if m is not None:
            problems.append(f"seed {seed}: {m}\n{g.source}\n?- {q.term}")
    return problems


__all__ = ["config_for_seed", "depth_for_seed", "engine_vs_oracle"]
