"""
Line-oriented trace dump for golden-trace tests

One line per iteration:

    <iteration> | <variable states> | <check states>

Variable states use 0s/0w/1w/1s, check states sp/sn/up/un.
"""

from typing import List, Sequence
import hashlib
import logging

import numpy as np

from ..core.states import CheckState, VarState
from .engine import DecodeResult, TraceStep

logger = logging.getLogger(__name__)

_VAR_CODES = {VarState(code).token: code for code in range(4)}
_CHECK_CODES = {CheckState(code).token: code for code in range(4)}


def format_step(step: TraceStep) -> str:
    var_tokens = " ".join(VarState(int(s)).token for s in step.states)
    check_tokens = " ".join(CheckState(int(c)).token for c in step.check_states)
    return f"{step.iteration} | {var_tokens} | {check_tokens}"


def format_trace(trace) -> str:
    """Dump a DecodeResult's trace (or a list of TraceSteps)"""
    steps = trace.trace if isinstance(trace, DecodeResult) else trace
    if steps is None:
        raise ValueError("Decode was run without record_trace=True")
    return "\n".join(format_step(step) for step in steps) + "\n"


def parse_trace(text: str) -> List[TraceStep]:
    steps: List[TraceStep] = []
    for number, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = [part.strip() for part in line.split("|")]
        if len(parts) != 3:
            raise ValueError(f"Line {number}: expected 'iteration | vars | checks'")
        try:
            iteration = int(parts[0])
            states = np.array([_VAR_CODES[tok] for tok in parts[1].split()], dtype=np.int8)
            check_states = np.array([_CHECK_CODES[tok] for tok in parts[2].split()], dtype=np.int8)
        except (KeyError, ValueError) as e:
            raise ValueError(f"Line {number}: bad trace token ({e})") from e
        sat = np.isin(check_states, (CheckState.PREV_SAT, CheckState.NEWLY_SAT))
        steps.append(TraceStep(iteration, states, sat, check_states))
    return steps


def trace_digest(steps: Sequence[TraceStep]) -> str:
    """Short stable digest of a trace, stored with atlas records"""
    digest = hashlib.sha256(format_trace(list(steps)).encode("utf-8"))
    return digest.hexdigest()[:16]
