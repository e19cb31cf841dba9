"""
Monte Carlo frame-error-rate estimation and guaranteed-correction sweeps

Frames are processed in fixed-size batches distributed with joblib. The
stopping decision is made by scanning outcomes in frame order, so results
do not depend on the number of workers.
"""

from dataclasses import dataclass
from itertools import islice
from typing import Iterable, Iterator, List, Literal, Optional, Sequence, Tuple
import logging
import math

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, Field
from scipy.stats import norm
from tqdm import tqdm

from ..config import StopCriteria
from ..core.graph import TannerGraph
from ..decoding.dispatch import Decoder
from ..decoding.engine import is_miscorrection
from ..decoding.trace import format_trace
from ..exceptions import BudgetExceededError
from .channel import ErrorPattern, bsc_sample, enumerate_patterns, pattern_count, sample_weight

logger = logging.getLogger(__name__)

BATCH_SIZE = 256
SWEEP_CHUNK = 4096
Z_95 = float(norm.ppf(0.975))


class SimResult(BaseModel):
    """Outcome of one (decoder, alpha) simulation point"""

    decoder: str
    alpha: float
    frames_run: int = Field(..., ge=0)
    frame_errors: int = Field(..., ge=0)
    fer: float = Field(..., ge=0.0, le=1.0)
    ber: float = Field(..., ge=0.0, le=1.0)
    avg_iterations: float
    ci95: float
    seed: int
    member_successes: List[int] = Field(default_factory=list)
    miscorrections: int = 0
    undecoded: int = 0
    max_frames: Optional[int] = None
    target_frame_errors: Optional[int] = None

    @property
    def decoded_frames(self) -> int:
        return self.frames_run - self.frame_errors

    def member_share(self, index: int = 0) -> float:
        """Fraction of correctly decoded frames resolved by cascade member ``index``"""
        decoded = sum(self.member_successes)
        return self.member_successes[index] / decoded if decoded else 0.0

    def interval(self) -> Tuple[float, float]:
        return max(0.0, self.fer - self.ci95), min(1.0, self.fer + self.ci95)


class VerificationReport(BaseModel):
    """Result of a guaranteed-correction sweep"""

    status: Literal['certified', 'counterexample', 'incomplete', 'sampled']
    decoder: str
    t: int
    mode: Literal['exhaustive', 'sampled'] = 'exhaustive'
    patterns_checked: int = 0
    coverage: dict = Field(default_factory=dict, description="weight -> patterns checked / total")
    counterexample: Optional[List[int]] = None
    counterexample_trace: Optional[str] = None

    @property
    def certified(self) -> bool:
        return self.status == 'certified'


@dataclass
class FrameOutcome:
    frame: int
    error: bool
    miscorrection: bool
    converged: bool
    iterations: int
    bit_errors: int
    member: Optional[int]


def confidence_half_width(fer: float, frames: int) -> float:
    """95 % normal-approximation half-width of a frame error rate"""
    if frames == 0:
        return 0.0
    return Z_95 * math.sqrt(fer * (1.0 - fer) / frames)


def decode_frame(g: TannerGraph, decoder: Decoder, alpha: float, seed: int, frame: int) -> FrameOutcome:
    pattern = bsc_sample(g.n, alpha, seed, frame)
    result = decoder(g, pattern.to_word())
    error = (not result.converged) or bool(result.output.any())
    member = result.algorithm_index
    if member is None and result.converged:
        member = 0
    return FrameOutcome(frame, error, is_miscorrection(result), result.converged,
                        result.iterations_used, result.output_weight, member)


def _run_batch(g: TannerGraph, decoder: Decoder, alpha: float, seed: int,
               start: int, stop: int) -> List[FrameOutcome]:
    return [decode_frame(g, decoder, alpha, seed, frame) for frame in range(start, stop)]


def _frame_stream(g: TannerGraph, decoder: Decoder, alpha: float, seed: int, limit: int,
                  threads: int, progress: bool, desc: str) -> Iterator[FrameOutcome]:
    """Outcomes in frame order, computed wave by wave"""
    wave = BATCH_SIZE * threads
    bar = tqdm(total=limit, desc=desc, disable=not progress, leave=False)
    try:
        with Parallel(n_jobs=threads) as parallel:
            for wave_start in range(0, limit, wave):
                bounds = [(s, min(s + BATCH_SIZE, limit))
                          for s in range(wave_start, min(wave_start + wave, limit), BATCH_SIZE)]
                batches = parallel(delayed(_run_batch)(g, decoder, alpha, seed, a, b) for a, b in bounds)
                for batch in batches:
                    for outcome in batch:
                        bar.update(1)
                        yield outcome
    finally:
        bar.close()


def estimate_fer(g: TannerGraph, decoder: Decoder, alpha: float, stop: StopCriteria, seed: int,
                 threads: int = 1, progress: bool = False) -> SimResult:
    """
    Estimate the frame error rate of a decoder at one crossover probability.

    A frame errs when the decoder does not converge or converges to a nonzero
    word. Frames run until ``stop.max_frames`` or ``stop.target_frame_errors``
    is reached, whichever comes first.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"Crossover probability {alpha} outside [0, 1]")

    frames = errors = miscorrections = undecoded = bit_errors = iterations = 0
    successes = [0] * decoder.member_count
    for outcome in _frame_stream(g, decoder, alpha, seed, stop.max_frames, threads, progress,
                                 f"{decoder.name} a={alpha:g}"):
        frames += 1
        iterations += outcome.iterations
        bit_errors += outcome.bit_errors
        if outcome.error:
            errors += 1
            miscorrections += int(outcome.miscorrection)
            undecoded += int(not outcome.converged)
        else:
            successes[outcome.member or 0] += 1
        if stop.target_frame_errors is not None and errors >= stop.target_frame_errors:
            break

    fer = errors / frames if frames else 0.0
    result = SimResult(
        decoder=decoder.name,
        alpha=alpha,
        frames_run=frames,
        frame_errors=errors,
        fer=fer,
        ber=bit_errors / (frames * g.n) if frames and g.n else 0.0,
        avg_iterations=iterations / frames if frames else 0.0,
        ci95=confidence_half_width(fer, frames),
        seed=seed,
        member_successes=successes,
        miscorrections=miscorrections,
        undecoded=undecoded,
        max_frames=stop.max_frames,
        target_frame_errors=stop.target_frame_errors,
    )
    logger.info(f"{decoder.name} alpha={alpha:g}: {errors}/{frames} frame errors, fer={fer:.3e}")
    return result


def compare_frames(g: TannerGraph, decoders: Sequence[Decoder], alpha: float, frames: int, seed: int,
                   threads: int = 1) -> np.ndarray:
    """Per-frame error verdicts, shape (decoders, frames), on one shared seed stream"""
    verdicts = np.zeros((len(decoders), frames), dtype=bool)
    for row, decoder in enumerate(decoders):
        for outcome in _frame_stream(g, decoder, alpha, seed, frames, threads, False, decoder.name):
            verdicts[row, outcome.frame] = outcome.error
    return verdicts


def _pattern_fails(g: TannerGraph, decoder: Decoder, support: Tuple[int, ...]) -> bool:
    word = np.zeros(g.n, dtype=np.int8)
    word[list(support)] = 1
    result = decoder(g, word)
    return (not result.converged) or bool(result.output.any())


def _failing_in_chunk(g: TannerGraph, decoder: Decoder, chunk: List[Tuple[int, ...]]) -> List[int]:
    return [i for i, support in enumerate(chunk) if _pattern_fails(g, decoder, support)]


def _sweep(g: TannerGraph, decoder: Decoder, patterns: Iterable[Tuple[int, ...]], threads: int,
           progress: bool, desc: str, total: Optional[int] = None,
           stop_at_first: bool = True, keep: int = 10) -> Tuple[int, List[Tuple[int, ...]], int]:
    """
    Decode a stream of supports.

    Returns:
        (patterns checked, failing supports in stream order (at most ``keep``), failure count)
        When stop_at_first is set, checking stops after the chunk wave holding
        the first failure and the count covers only that wave.
    """
    iterator = iter(patterns)
    checked = failures_total = 0
    failures: List[Tuple[int, ...]] = []
    bar = tqdm(total=total, desc=desc, disable=not progress, leave=False)
    try:
        with Parallel(n_jobs=threads) as parallel:
            while True:
                chunks = [list(islice(iterator, SWEEP_CHUNK)) for _ in range(threads)]
                chunks = [chunk for chunk in chunks if chunk]
                if not chunks:
                    break
                found = parallel(delayed(_failing_in_chunk)(g, decoder, chunk) for chunk in chunks)
                for chunk, failing in zip(chunks, found):
                    if stop_at_first and failing:
                        checked += failing[0] + 1
                        failures.append(chunk[failing[0]])
                        failures_total += 1
                        break
                    checked += len(chunk)
                    failures_total += len(failing)
                    failures.extend(chunk[i] for i in failing[:max(0, keep - len(failures))])
                bar.update(sum(len(chunk) for chunk in chunks))
                if stop_at_first and failures:
                    break
    finally:
        bar.close()
    return checked, failures, failures_total


def verify_guaranteed_correction(g: TannerGraph, decoder: Decoder, t: int, budget: Optional[int] = None,
                                 samples: Optional[int] = None, seed: int = 0, threads: int = 1,
                                 progress: bool = False) -> VerificationReport:
    """
    Check that a decoder corrects every error pattern of weight <= t.

    Args:
        g: Tanner graph
        decoder: Decoder under test
        t: Largest error weight
        budget: Maximum number of patterns to decode (None = unlimited)
        samples: When the exhaustive sweep exceeds the budget, draw this many
            random patterns per weight instead; the report is then 'sampled',
            never 'certified'
        seed: Seed for sampled mode

    Returns:
        VerificationReport with status certified / counterexample / incomplete / sampled.
        A counterexample carries the first failing pattern (weights ascending,
        lexicographic within a weight) with its full decode trace.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    totals = {w: pattern_count(g.n, w) for w in range(t + 1)}
    grand_total = sum(totals.values())
    exhaustive = budget is None or grand_total <= budget
    mode = 'exhaustive' if exhaustive or samples is None else 'sampled'
    if not exhaustive:
        logger.warning(f"{grand_total} patterns exceed the budget {budget}; "
                       f"{'sampling' if samples else 'stopping at the budget'}")

    coverage: dict = {}
    checked_total = 0
    remaining = budget
    complete = True
    for weight in range(t + 1):
        total = totals[weight]
        if remaining is not None and total > remaining:
            if samples is None:
                patterns: Iterable[Tuple[int, ...]] = (
                    p.support for p in islice(enumerate_patterns(g.n, weight), remaining))
                complete = False
            else:
                patterns = (sample_weight(g.n, weight, seed, frame).support for frame in range(samples))
                complete = False
        else:
            patterns = (p.support for p in enumerate_patterns(g.n, weight))

        checked, failures, _ = _sweep(g, decoder, patterns, threads, progress,
                                      f"{decoder.name} w={weight}", total=total)
        checked_total += checked
        coverage[str(weight)] = f"{checked}/{total}"
        if remaining is not None:
            remaining = max(0, remaining - checked)

        if failures:
            support = failures[0]
            result = decoder(g, ErrorPattern(support, g.n).to_word(), record_trace=True)
            logger.info(f"{decoder.name}: counterexample of weight {weight}: {list(support)}")
            return VerificationReport(status='counterexample', decoder=decoder.name, t=t, mode=mode,
                                      patterns_checked=checked_total, coverage=coverage,
                                      counterexample=list(support),
                                      counterexample_trace=format_trace(result))
        if remaining == 0 and weight < t and samples is None:
            complete = False
            for rest in range(weight + 1, t + 1):
                coverage[str(rest)] = f"0/{totals[rest]}"
            break

    if complete:
        status = 'certified'
    else:
        status = 'sampled' if samples is not None else 'incomplete'
    logger.info(f"{decoder.name}, t={t}: {status} after {checked_total} patterns")
    return VerificationReport(status=status, decoder=decoder.name, t=t, mode=mode,
                              patterns_checked=checked_total, coverage=coverage)


class SweepReport(BaseModel):
    decoder: str
    weight: int
    samples: int
    failure_count: int
    failures: List[List[int]] = Field(default_factory=list)


def sweep_fixed_weight(g: TannerGraph, decoder: Decoder, weight: int, samples: int, seed: int,
                       threads: int = 1, progress: bool = False, keep: int = 10) -> SweepReport:
    """Decode ``samples`` random patterns of one weight and count failures"""
    patterns = (sample_weight(g.n, weight, seed, frame).support for frame in range(samples))
    checked, failures, count = _sweep(g, decoder, patterns, threads, progress,
                                      f"{decoder.name} w={weight}", total=samples,
                                      stop_at_first=False, keep=keep)
    logger.info(f"{decoder.name}: {count} failures in {checked} weight-{weight} samples")
    return SweepReport(decoder=decoder.name, weight=weight, samples=checked, failure_count=count,
                       failures=[list(f) for f in failures])


def sweep_exhaustive_weight(g: TannerGraph, decoder: Decoder, weight: int, threads: int = 1,
                            progress: bool = False, max_patterns: Optional[int] = None,
                            keep: int = 10) -> SweepReport:
    """Decode every pattern of one weight and count failures"""
    if max_patterns is not None and pattern_count(g.n, weight) > max_patterns:
        raise BudgetExceededError(
            f"C({g.n}, {weight}) = {pattern_count(g.n, weight)} patterns exceeds the budget {max_patterns}")
    patterns = (p.support for p in enumerate_patterns(g.n, weight))
    checked, failures, count = _sweep(g, decoder, patterns, threads, progress,
                                      f"{decoder.name} w={weight}", total=pattern_count(g.n, weight),
                                      stop_at_first=False, keep=keep)
    return SweepReport(decoder=decoder.name, weight=weight, samples=checked, failure_count=count,
                       failures=[list(f) for f in failures])
