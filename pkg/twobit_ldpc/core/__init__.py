"""
Core module for twobit-ldpc

Contains the Tanner graph, the two-bit state alphabets, QC construction,
flip rules and validators.
"""

from .states import VarState, CheckState, Assignment, classify_check
from .graph import TannerGraph, Syndrome, syndrome, girth, rank_gf2, min_codeword_weight, INFINITE_GIRTH
from .construction import build_qc_code, find_girth8_shifts, qc_shift_permutation
from .rules import (
    FlipRule,
    f1_lookup,
    f2_lookup,
    get_builtin_rule,
    builtin_rule_names,
    validate_rule_table,
    is_symmetric,
    memoryless_as_memory,
    random_rule,
)
from .validators import validate_graph, validate_base_matrix, validate_error_pattern

__all__ = [
    "VarState",
    "CheckState",
    "Assignment",
    "classify_check",
    "TannerGraph",
    "Syndrome",
    "syndrome",
    "girth",
    "rank_gf2",
    "min_codeword_weight",
    "INFINITE_GIRTH",
    "build_qc_code",
    "find_girth8_shifts",
    "qc_shift_permutation",
    "FlipRule",
    "f1_lookup",
    "f2_lookup",
    "get_builtin_rule",
    "builtin_rule_names",
    "validate_rule_table",
    "is_symmetric",
    "memoryless_as_memory",
    "random_rule",
    "validate_graph",
    "validate_base_matrix",
    "validate_error_pattern",
]
