"""
Decoding module for twobit-ldpc

Contains the two-bit engine, parallel bit flipping, cascades, the Gallager-B
baseline and the trace text format.
"""

from .engine import (
    CascadeSpec,
    DecodeResult,
    TraceStep,
    decode_cascade,
    decode_parallel_bf,
    decode_two_bit,
    is_miscorrection,
)
from .gallager import decode_gallager_b
from .trace import format_trace, parse_trace, trace_digest

__all__ = [
    "CascadeSpec",
    "DecodeResult",
    "TraceStep",
    "decode_cascade",
    "decode_parallel_bf",
    "decode_two_bit",
    "decode_gallager_b",
    "is_miscorrection",
    "format_trace",
    "parse_trace",
    "trace_digest",
]
