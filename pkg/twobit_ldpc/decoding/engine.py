"""
Iterative bit flipping decoders

All decoders assume the all-zero codeword convention only in the harness;
here they take a received hard word ``y`` and return the decoded word.
One iteration is one synchronous update of every variable; convergence is
tested before each update, so an error-free word costs 0 iterations.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..core.graph import TannerGraph, parity_of
from ..core.rules import FlipRule, check_arity
from ..core.states import Assignment, CheckState, classify_checks

logger = logging.getLogger(__name__)


@dataclass
class TraceStep:
    """Snapshot after ``iteration`` updates (iteration 0 is the initial state)"""

    iteration: int
    states: np.ndarray
    sat: np.ndarray
    check_states: np.ndarray

    def corrupt(self) -> List[int]:
        """Variables whose hard value is 1"""
        return np.flatnonzero(self.states >> 1).tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TraceStep):
            return NotImplemented
        return (self.iteration == other.iteration
                and np.array_equal(self.states, other.states)
                and np.array_equal(self.sat, other.sat)
                and np.array_equal(self.check_states, other.check_states))


@dataclass
class DecodeResult:
    converged: bool
    output: np.ndarray
    iterations_used: int
    algorithm_index: Optional[int] = None
    trace: Optional[List[TraceStep]] = None
    final_states: Optional[np.ndarray] = None
    cycle_detected_at: Optional[int] = None
    member_iterations: List[int] = field(default_factory=list)

    @property
    def output_weight(self) -> int:
        return int(np.count_nonzero(self.output))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecodeResult):
            return NotImplemented
        return (self.converged == other.converged
                and np.array_equal(self.output, other.output)
                and self.iterations_used == other.iterations_used
                and self.algorithm_index == other.algorithm_index
                and self.trace == other.trace)


@dataclass
class CascadeSpec:
    """Ordered cascade members; each runs from the channel word for at most l_i iterations"""

    members: List[Tuple[FlipRule, int]]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("Cascade spec must contain at least one member")
        for rule, limit in self.members:
            if limit < 1:
                raise ValueError(f"Cascade member '{rule.name}' has iteration limit {limit} < 1")

    @property
    def total_iterations(self) -> int:
        return sum(limit for _, limit in self.members)

    @property
    def names(self) -> List[str]:
        return [rule.name for rule, _ in self.members]

    @classmethod
    def single(cls, rule: FlipRule, max_iter: int) -> "CascadeSpec":
        return cls([(rule, max_iter)])


def is_miscorrection(result: DecodeResult, transmitted: Optional[Sequence[int]] = None) -> bool:
    """Converged, but to a codeword other than the transmitted one (all-zero by default)"""
    if not result.converged:
        return False
    if transmitted is None:
        return bool(result.output.any())
    return not np.array_equal(result.output, np.asarray(transmitted, dtype=result.output.dtype))


def _hard_word(g: TannerGraph, y: Sequence[int]) -> np.ndarray:
    word = np.asarray(y, dtype=np.int8)
    if word.shape != (g.n,):
        raise ValueError(f"Received word has length {word.shape[0] if word.ndim else 0}, expected n={g.n}")
    if not np.isin(word, (0, 1)).all():
        raise ValueError("Received word must be binary")
    return word


def _step(iteration: int, states: np.ndarray, sat_before: np.ndarray, sat: np.ndarray) -> TraceStep:
    return TraceStep(iteration, states.copy(), sat.copy(), classify_checks(sat_before, sat))


def _replay_output(history: List[np.ndarray], first: int, max_iter: int) -> np.ndarray:
    """State at max_iter of a sequence that cycles from ``first`` onward"""
    period = len(history) - 1 - first
    index = first + (max_iter - first) % period
    return history[index]


def decode_two_bit(g: TannerGraph, y: Sequence[int], rule: FlipRule, max_iter: int = 30,
                   record_trace: bool = False, detect_cycles: bool = False) -> DecodeResult:
    """
    Generic two-bit decoder.

    Variables start strong with the channel bit. Each iteration computes the
    syndrome of the hard projections, classifies checks against the previous
    iteration (the first iteration uses before = now), counts per-variable
    tuples and applies the rule to every variable at once.

    Args:
        g: Tanner graph
        y: Received hard word
        rule: Flip rule; its gamma must match the graph
        max_iter: Maximum number of updates
        record_trace: Keep a TraceStep per iteration
        detect_cycles: Stop once a full decoder state repeats; the verdict and
            output are those of running to max_iter

    Raises:
        ArityMismatchError: rule and graph disagree on gamma
    """
    check_arity(rule, g.gamma)
    word = _hard_word(g, y)
    states = Assignment.from_hard(word).states
    table = rule.table
    var_checks = g.var_checks

    sat = parity_of(g, states >> 1) == 0
    sat_before = sat
    trace = [_step(0, states, sat, sat)] if record_trace else None
    seen: Dict[bytes, int] = {}
    history: List[np.ndarray] = []

    iteration = 0
    cycle_at: Optional[int] = None
    while not sat.all() and iteration < max_iter:
        if detect_cycles:
            key = states.tobytes() + (sat_before.tobytes() if rule.uses_check_memory else b"")
            if key in seen:
                cycle_at = iteration
                history.append(states)
                states = _replay_output(history, seen[key], max_iter)
                logger.debug(f"{rule.name}: state at iteration {iteration} repeats iteration {seen[key]}")
                break
            seen[key] = iteration
            history.append(states)

        unsat_v = ~sat[var_checks]
        if rule.uses_check_memory:
            was_sat_v = sat_before[var_checks]
            n_up = (unsat_v & ~was_sat_v).sum(axis=1)
            n_un = (unsat_v & was_sat_v).sum(axis=1)
            n_sp = (~unsat_v & was_sat_v).sum(axis=1)
            states = table[states, n_up, n_un, n_sp]
        else:
            states = table[states, unsat_v.sum(axis=1)]

        iteration += 1
        sat_before = sat
        sat = parity_of(g, states >> 1) == 0
        if trace is not None:
            trace.append(_step(iteration, states, sat_before, sat))

    if cycle_at is not None:
        return DecodeResult(False, (states >> 1).astype(np.int8), max_iter, trace=trace,
                            final_states=states.copy(), cycle_detected_at=cycle_at)

    converged = bool(sat.all())
    logger.debug(f"{rule.name}: converged={converged} after {iteration} iterations")
    return DecodeResult(converged, (states >> 1).astype(np.int8), iteration, trace=trace,
                        final_states=states.copy())


def decode_parallel_bf(g: TannerGraph, y: Sequence[int], max_iter: int = 30,
                       record_trace: bool = False, detect_cycles: bool = False) -> DecodeResult:
    """
    Parallel bit flipping: every variable with more unsatisfied than satisfied
    checks flips, all at once.
    """
    word = _hard_word(g, y).copy()
    var_checks = g.var_checks
    sat = parity_of(g, word) == 0
    sat_before = sat

    def strong(bits: np.ndarray) -> np.ndarray:
        return ((bits << 1) | 1).astype(np.int8)

    trace = [_step(0, strong(word), sat, sat)] if record_trace else None
    seen: Dict[bytes, int] = {}
    history: List[np.ndarray] = []

    iteration = 0
    while not sat.all() and iteration < max_iter:
        if detect_cycles:
            key = word.tobytes()
            if key in seen:
                history.append(word)
                word = _replay_output(history, seen[key], max_iter)
                return DecodeResult(False, word.copy(), max_iter, trace=trace,
                                    final_states=strong(word), cycle_detected_at=iteration)
            seen[key] = iteration
            history.append(word)

        n_u = (~sat[var_checks]).sum(axis=1)
        flip = n_u > g.gamma - n_u
        word = word ^ flip.astype(np.int8)
        iteration += 1
        sat_before = sat
        sat = parity_of(g, word) == 0
        if trace is not None:
            trace.append(_step(iteration, strong(word), sat_before, sat))

    return DecodeResult(bool(sat.all()), word.copy(), iteration, trace=trace, final_states=strong(word))


def decode_cascade(g: TannerGraph, y: Sequence[int], spec: CascadeSpec,
                   record_trace: bool = False, detect_cycles: bool = False) -> DecodeResult:
    """
    Run cascade members in order, each restarted from ``y``, until one converges.

    The iteration count is cumulative: every failed member contributes its full
    limit. On overall failure the result is non-converged with the total limit,
    the output of the last member and no algorithm index.
    """
    for rule, _ in spec.members:
        check_arity(rule, g.gamma)

    spent = 0
    member_iterations: List[int] = []
    result: Optional[DecodeResult] = None
    for index, (rule, limit) in enumerate(spec.members):
        result = decode_two_bit(g, y, rule, limit, record_trace=record_trace,
                                detect_cycles=detect_cycles)
        if result.converged:
            member_iterations.append(result.iterations_used)
            result.algorithm_index = index
            result.iterations_used += spent
            result.member_iterations = member_iterations
            return result
        member_iterations.append(limit)
        spent += limit

    assert result is not None
    result.iterations_used = spent
    result.member_iterations = member_iterations
    return result


def corrupt_trajectory(result: DecodeResult) -> List[List[int]]:
    """Corrupt set after each recorded iteration"""
    if result.trace is None:
        raise ValueError("Decode was run without record_trace=True")
    return [step.corrupt() for step in result.trace]


def check_state_counts(step: TraceStep) -> Dict[str, int]:
    counts = np.bincount(step.check_states, minlength=4)
    return {CheckState(i).token: int(counts[i]) for i in range(4)}
