"""
Binary symmetric channel and error-pattern generation

The all-zero codeword is assumed transmitted, so the channel output equals
the error pattern. Each frame draws from its own generator derived from
(master seed, frame index), so any frame can be reproduced in isolation.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterator, Optional, Sequence, Tuple
import logging

import numpy as np
from scipy.special import comb

from ..exceptions import BudgetExceededError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ErrorPattern:
    """Sorted support of a binary error vector of length n"""

    support: Tuple[int, ...]
    n: int

    def __post_init__(self) -> None:
        support = tuple(sorted(int(i) for i in self.support))
        if len(set(support)) != len(support):
            raise ValueError(f"Error pattern has repeated indices: {support}")
        if support and (support[0] < 0 or support[-1] >= self.n):
            raise ValueError(f"Error pattern indices must lie in [0, {self.n})")
        object.__setattr__(self, 'support', support)

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "ErrorPattern":
        word = np.asarray(word)
        return cls(tuple(np.flatnonzero(word).tolist()), int(word.shape[0]))

    def to_word(self) -> np.ndarray:
        word = np.zeros(self.n, dtype=np.int8)
        word[list(self.support)] = 1
        return word

    @property
    def weight(self) -> int:
        return len(self.support)

    def __str__(self) -> str:
        return " ".join(str(i) for i in self.support)


def frame_rng(seed: int, frame: int) -> np.random.Generator:
    """Independent generator for one frame of a seeded run"""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(frame,)))


def bsc_sample(n: int, alpha: float, seed: int, frame: int = 0) -> ErrorPattern:
    """Each index corrupted independently with probability alpha"""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"Crossover probability {alpha} outside [0, 1]")
    flips = frame_rng(seed, frame).random(n) < alpha
    return ErrorPattern(tuple(np.flatnonzero(flips).tolist()), n)


def sample_weight(n: int, weight: int, seed: int, frame: int = 0) -> ErrorPattern:
    """Uniformly random pattern of exactly ``weight`` errors"""
    if not 0 <= weight <= n:
        raise ValueError(f"Weight {weight} outside [0, {n}]")
    chosen = frame_rng(seed, frame).choice(n, size=weight, replace=False)
    return ErrorPattern(tuple(chosen.tolist()), n)


def pattern_count(n: int, weight: int) -> int:
    return int(comb(n, weight, exact=True))


def enumerate_patterns(n: int, weight: int, max_patterns: Optional[int] = None) -> Iterator[ErrorPattern]:
    """
    Every pattern of the given weight exactly once, in lexicographic order.

    Args:
        n: Word length
        weight: Number of errors
        max_patterns: Refuse (before yielding anything) when C(n, weight) exceeds this

    Raises:
        BudgetExceededError: C(n, weight) is larger than max_patterns
    """
    if not 0 <= weight <= n:
        raise ValueError(f"Weight {weight} outside [0, {n}]")
    total = pattern_count(n, weight)
    if max_patterns is not None and total > max_patterns:
        raise BudgetExceededError(f"C({n}, {weight}) = {total} patterns exceeds the budget {max_patterns}")
    logger.debug(f"enumerating {total} patterns of weight {weight} over n={n}")
    for support in combinations(range(n), weight):
        yield ErrorPattern(support, n)
