"""
twobit-ldpc - Two-bit bit flipping decoders for LDPC codes on the BSC

Each variable node keeps a hard bit plus a strength bit, and a flip rule maps
(state, unsatisfied-check counts) to the next state. The package covers:

- Tanner graphs, alist files and girth-8 quasi-cyclic code construction
- Rule tables (memoryless and with check memory), rule text and cascades
- Decoding with traces, Monte Carlo frame error rates and exhaustive sweeps
- Failure graph enumeration, minimal atlases and convergence certificates
"""

# Graphs and codes
from .core.graph import TannerGraph, syndrome, girth, min_codeword_weight
from .core.construction import build_qc_code, find_girth8_shifts
from .core.states import VarState, CheckState, Assignment

# Flip rules
from .core.rules import (
    FlipRule,
    f1_lookup,
    f2_lookup,
    get_builtin_rule,
    builtin_rule_names,
    validate_rule_table,
)
from .parsing.rule_text import parse_rule, emit_rule
from .parsing.cascade_spec import parse_cascade, load_cascade

# Decoding
from .decoding.engine import CascadeSpec, DecodeResult, decode_two_bit, decode_parallel_bf, decode_cascade
from .decoding.gallager import decode_gallager_b
from .decoding.dispatch import Decoder, decode
from .decoding.trace import format_trace, parse_trace

# Simulation
from .simulation.channel import ErrorPattern, bsc_sample
from .simulation.harness import SimResult, VerificationReport, estimate_fer, verify_guaranteed_correction

# Failure analysis
from .analysis.failures import FailureGraph, Atlas, enumerate_failures, reduce_minimal, simulate_on_subgraph
from .analysis.subgraphs import enumerate_initial_subgraphs
from .analysis.certify import CertificationResult, certify_convergence

# Configuration
from .config import DecoderSpec, RunConfig, StopCriteria, EnumerationConfig

__version__ = "0.1.0"

__all__ = [
    # Graphs and codes
    "TannerGraph",
    "syndrome",
    "girth",
    "min_codeword_weight",
    "build_qc_code",
    "find_girth8_shifts",
    "VarState",
    "CheckState",
    "Assignment",

    # Flip rules
    "FlipRule",
    "f1_lookup",
    "f2_lookup",
    "get_builtin_rule",
    "builtin_rule_names",
    "validate_rule_table",
    "parse_rule",
    "emit_rule",
    "parse_cascade",
    "load_cascade",

    # Decoding
    "CascadeSpec",
    "DecodeResult",
    "decode_two_bit",
    "decode_parallel_bf",
    "decode_cascade",
    "decode_gallager_b",
    "Decoder",
    "decode",
    "format_trace",
    "parse_trace",

    # Simulation
    "ErrorPattern",
    "bsc_sample",
    "SimResult",
    "VerificationReport",
    "estimate_fer",
    "verify_guaranteed_correction",

    # Failure analysis
    "FailureGraph",
    "Atlas",
    "enumerate_failures",
    "reduce_minimal",
    "simulate_on_subgraph",
    "enumerate_initial_subgraphs",
    "CertificationResult",
    "certify_convergence",

    # Configuration
    "DecoderSpec",
    "RunConfig",
    "StopCriteria",
    "EnumerationConfig",
]
