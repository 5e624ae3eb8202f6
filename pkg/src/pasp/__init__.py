"""Possibilistic answer set programming.

Three independent routes to the same answer sets: the possibilistic
reduct (:mod:`pasp.preduct`), compilation to classical ASP
(:mod:`pasp.translate`) and an explicit possibility-distribution oracle
(:mod:`pasp.possdist`). :func:`pasp.preduct.baseline_answer_sets` gives the
older support-based semantics for comparison.
"""

__version__ = "0.1.0"

from .errors import GuardError, NotDefiniteError, PaspError, ParseError, ScaleError
from .syntax import Program, Rule, naf_atoms, parse_program, render_program
from .preduct import (
    Valuation,
    baseline_answer_sets,
    enumerate_poss_answer_sets,
    is_poss_answer_set,
)
from .possdist import semantic_answer_sets
from .translate import solve_via_translation

__all__ = [
    "GuardError", "NotDefiniteError", "PaspError", "ParseError", "ScaleError",
    "Program", "Rule", "naf_atoms", "parse_program", "render_program",
    "Valuation", "baseline_answer_sets", "enumerate_poss_answer_sets",
    "is_poss_answer_set", "semantic_answer_sets", "solve_via_translation",
]
