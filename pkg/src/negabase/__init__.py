"""Optimal digit representations in positive and negative real bases."""
from .confluent import ConfluentParams, detect_confluent, frougny_normalize
from .expand import Expansion, Source, dstar_one, expand, is_admissible, orbit
from .numsys import DigitString, NumerationSystem, evaluate, lex_compare, parse_base
from .optimality import (certify_optimality, counterexample_interval, min_prefix_error,
                         optimal_candidate, verify_no_optimal_in_interval)
from .realnum import Real, compare, make_real, polynomial_root, sqrt
from .transforms import assign_digit, branch_map, classify_regime, step_greedy, step_optimal

__all__ = [
    "ConfluentParams", "detect_confluent", "frougny_normalize",
    "Expansion", "Source", "dstar_one", "expand", "is_admissible", "orbit",
    "DigitString", "NumerationSystem", "evaluate", "lex_compare", "parse_base",
    "certify_optimality", "counterexample_interval", "min_prefix_error",
    "optimal_candidate", "verify_no_optimal_in_interval",
    "Real", "compare", "make_real", "polynomial_root", "sqrt",
    "assign_digit", "branch_map", "classify_regime", "step_greedy", "step_optimal",
]
