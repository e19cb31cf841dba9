"""
Gallager-B hard-decision message passing, used as a comparison baseline
"""

from typing import List, Optional, Sequence, Union
import logging

import numpy as np

from ..core.graph import TannerGraph, parity_of
from .engine import DecodeResult, TraceStep, _hard_word
from ..core.states import classify_checks

logger = logging.getLogger(__name__)


def _threshold_at(schedule: Union[int, Sequence[int]], iteration: int) -> int:
    if isinstance(schedule, int):
        return schedule
    if not schedule:
        raise ValueError("Threshold schedule must not be empty")
    return int(schedule[min(iteration, len(schedule) - 1)])


def decode_gallager_b(g: TannerGraph, y: Sequence[int], max_iter: int = 30,
                      threshold_schedule: Union[int, Sequence[int]] = 2,
                      record_trace: bool = False) -> DecodeResult:
    """
    Gallager-B decoding.

    A variable-to-check message is the channel bit, flipped when at least
    ``threshold`` of the other incoming check messages disagree with it. The
    tentative decision is the majority of the channel bit and all incoming
    check messages (ties keep the channel bit).

    Args:
        g: Tanner graph
        y: Received hard word
        max_iter: Maximum number of message-passing iterations
        threshold_schedule: One threshold, or a per-iteration list whose last
            entry is reused
        record_trace: Keep the tentative decision after every iteration
    """
    word = _hard_word(g, y)
    gamma = g.gamma
    edges = g.var_checks.ravel()
    channel = np.repeat(word, gamma).reshape(g.n, gamma)
    to_check = channel.copy()

    decision = word.copy()
    sat = parity_of(g, decision) == 0
    trace: Optional[List[TraceStep]] = None
    if record_trace:
        trace = [TraceStep(0, (decision << 1 | 1).astype(np.int8), sat.copy(), classify_checks(sat, sat))]

    iteration = 0
    while not sat.all() and iteration < max_iter:
        if g.n:
            check_parity = (np.bincount(edges, weights=to_check.ravel(), minlength=g.m) % 2).astype(np.int8)
        else:
            check_parity = np.zeros(g.m, dtype=np.int8)
        to_var = check_parity[g.var_checks] ^ to_check

        disagree = (to_var != channel).astype(np.int64)
        total = disagree.sum(axis=1)
        decision = np.where(2 * total > gamma + 1, word ^ 1, word).astype(np.int8)

        threshold = _threshold_at(threshold_schedule, iteration)
        others = total[:, None] - disagree
        to_check = np.where(others >= threshold, channel ^ 1, channel).astype(np.int8)

        iteration += 1
        sat_before = sat
        sat = parity_of(g, decision) == 0
        if trace is not None:
            trace.append(TraceStep(iteration, (decision << 1 | 1).astype(np.int8), sat.copy(),
                                   classify_checks(sat_before, sat)))

    converged = bool(sat.all())
    logger.debug(f"gallager-b: converged={converged} after {iteration} iterations")
    return DecodeResult(converged, decision.copy(), iteration, trace=trace,
                        final_states=(decision << 1 | 1).astype(np.int8))
