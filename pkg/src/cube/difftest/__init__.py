"""Independent oracles, a program generator and outcome comparison."""

from .compare import mismatch, normalize, same_outcome
from .derived import KINDS, DerivedCase, derived_case
from .gen import GenConfig, GeneratedProgram, gen_goal, gen_program
from .harness import config_for_seed, engine_vs_oracle
from .oracle import TRUNCATED, OracleResult, oracle_eval
from .sld import sld_cut_eval

__all__ = [
    "oracle_eval", "OracleResult", "TRUNCATED", "sld_cut_eval", "GenConfig",
    "GeneratedProgram", "gen_program", "gen_goal", "normalize", "same_outcome", "mismatch",
    "KINDS", "DerivedCase", "derived_case", "config_for_seed", "engine_vs_oracle",
]
