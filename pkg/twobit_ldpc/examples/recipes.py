"""
Ready-made decoders, cascade presets and small code searches
"""

from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from ..config import DEFAULT_MAX_ITER, DecoderSpec
from ..core.construction import build_qc_code, find_girth8_shifts
from ..core.graph import TannerGraph, girth, min_codeword_weight
from ..decoding.dispatch import Decoder
from ..exceptions import SearchExhaustedError

logger = logging.getLogger(__name__)

CASCADE_PRESETS: Dict[str, List[Tuple[str, int]]] = {
    'f1-f2': [('f1', 30), ('f2', 30)],
    'f2-f1': [('f2', 30), ('f1', 30)],
    'f1-f2-bf': [('f1', 30), ('f2', 30), ('bf-parallel', 10)],
}


def tbfa1_decoder(max_iter: int = DEFAULT_MAX_ITER) -> Decoder:
    return Decoder(DecoderSpec(kind='two-bit', rule='f1', max_iter=max_iter))


def tbfa2_decoder(max_iter: int = DEFAULT_MAX_ITER) -> Decoder:
    return Decoder(DecoderSpec(kind='two-bit', rule='f2', max_iter=max_iter))


def parallel_bf_decoder(max_iter: int = DEFAULT_MAX_ITER) -> Decoder:
    return Decoder(DecoderSpec(kind='parallel-bf', max_iter=max_iter))


def gallager_b_decoder(max_iter: int = DEFAULT_MAX_ITER, threshold: int = 2) -> Decoder:
    return Decoder(DecoderSpec(kind='gallager-b', max_iter=max_iter, threshold=threshold))


def cascade_decoder(preset: str = 'f1-f2') -> Decoder:
    """
    Decoder for one of the cascade presets.

    Raises:
        ValueError: unknown preset name
    """
    if preset not in CASCADE_PRESETS:
        raise ValueError(f"Unknown cascade preset '{preset}'. Available: {sorted(CASCADE_PRESETS)}")
    return Decoder(DecoderSpec(kind='cascade', cascade=CASCADE_PRESETS[preset], label=f"cascade-{preset}"))


@dataclass
class QCCode:
    graph: TannerGraph
    base: List[List[int]]
    p: int

    @property
    def n(self) -> int:
        return self.graph.n


def find_certified_code(max_n: int = 100, min_weight: int = 8, cols_options: Sequence[int] = (4, 5),
                        seeds: Iterable[int] = range(8), rows: int = 3) -> QCCode:
    """
    Smallest-search QC code of girth >= 8 with no nonzero codeword lighter than ``min_weight``.

    Circulant sizes are tried from the largest that fits ``max_n`` downward,
    for each column count and seed.

    Raises:
        SearchExhaustedError: nothing in the search space qualifies
    """
    seeds = list(seeds)
    for cols in cols_options:
        for p in range(max_n // cols, rows, -1):
            for seed in seeds:
                try:
                    base = find_girth8_shifts(rows, cols, p, seed=seed)
                except SearchExhaustedError:
                    logger.debug(f"no girth-8 base for {rows}x{cols}, p={p}")
                    break
                g = build_qc_code(base, p)
                lightest: Optional[int] = min_codeword_weight(g, min_weight - 1)
                if lightest is None:
                    logger.info(f"{rows}x{cols} p={p} seed={seed}: n={g.n}, girth {girth(g)}, "
                                f"no codeword below weight {min_weight}")
                    return QCCode(g, base, p)
                logger.debug(f"{rows}x{cols} p={p} seed={seed}: codeword of weight {lightest}")
    raise SearchExhaustedError(f"No girth-8 QC code with n <= {max_n} and minimum weight >= {min_weight}")
