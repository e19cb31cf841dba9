"""
Parsing module for twobit-ldpc

Contains parsers and emitters for the hand-authored text formats: rule
tables, cascade specs and QC base matrices.
"""

from .rule_text import parse_rule, emit_rule, validate_rule_syntax
from .cascade_spec import parse_cascade, load_cascade, emit_cascade, resolve_rule
from .base_matrix import parse_base_matrix, emit_base_matrix
from .syntax import get_format_examples

__all__ = [
    "parse_rule",
    "emit_rule",
    "validate_rule_syntax",
    "parse_cascade",
    "load_cascade",
    "emit_cascade",
    "resolve_rule",
    "parse_base_matrix",
    "emit_base_matrix",
    "get_format_examples",
]
