"""
Small Tanner subgraphs: construction helpers and the initial error subgraphs

A subgraph keeps every variable at full degree gamma; checks may have any
degree >= 1 (their outside neighbours are implicit and correct).
"""

from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple
import logging

import numpy as np

from ..core.graph import TannerGraph
from .canonical import canonical_key

logger = logging.getLogger(__name__)


def check_distances(g: TannerGraph) -> np.ndarray:
    """
    Pairwise check-to-check distances in edges (m x m, -1 when disconnected).

    A new variable joined to checks a and b closes a cycle of length
    distance(a, b) + 2.
    """
    dist = np.full((g.m, g.m), -1, dtype=np.int64)
    for source in range(g.m):
        dist[source, source] = 0
        frontier = [source]
        level = 0
        seen_vars = set()
        while frontier:
            level += 2
            nxt = []
            for c in frontier:
                for v in g.check_adj[c]:
                    if v in seen_vars:
                        continue
                    seen_vars.add(v)
                    for d in g.var_adj[v]:
                        if dist[source, d] < 0:
                            dist[source, d] = level
                            nxt.append(d)
            frontier = nxt
    return dist


def attachment_closes_short_cycle(dist: np.ndarray, checks: Sequence[int], girth_min: int) -> bool:
    """True when joining a new variable to ``checks`` creates a cycle shorter than girth_min"""
    for a, b in combinations(checks, 2):
        d = dist[a, b]
        if d >= 0 and d + 2 < girth_min:
            return True
    return False


def add_variable(g: TannerGraph, existing: Sequence[int]) -> TannerGraph:
    """Append one variable joined to ``existing`` checks plus fresh leaf checks up to gamma"""
    fresh = list(range(g.m, g.m + g.gamma - len(existing)))
    var_adj = [list(checks) for checks in g.var_adj] + [list(existing) + fresh]
    return TannerGraph(var_adj, m=g.m + len(fresh), gamma=g.gamma)


def single_variable(gamma: int = 3) -> TannerGraph:
    return TannerGraph([list(range(gamma))], m=gamma, gamma=gamma)


def attachments(g: TannerGraph, girth_min: int, max_check_degree: Optional[int] = None,
                candidates: Optional[Sequence[int]] = None, dist: Optional[np.ndarray] = None
                ) -> Iterator[Tuple[int, ...]]:
    """
    Every set of existing checks (0..gamma of them) a new variable may join.

    Args:
        g: Current subgraph
        girth_min: Girth the extended graph must keep
        max_check_degree: Cap on check degree after the join
        candidates: Restrict to these checks (default: all)
        dist: Precomputed check_distances(g)
    """
    if dist is None:
        dist = check_distances(g)
    pool = list(range(g.m)) if candidates is None else list(candidates)
    if max_check_degree is not None:
        pool = [c for c in pool if len(g.check_adj[c]) < max_check_degree]
    for size in range(0, g.gamma + 1):
        for chosen in combinations(pool, size):
            if not attachment_closes_short_cycle(dist, chosen, girth_min):
                yield chosen


def enumerate_initial_subgraphs(k: int, gamma: int = 3, girth_min: int = 8,
                                max_check_degree: Optional[int] = None) -> List[TannerGraph]:
    """
    All non-isomorphic graphs of k degree-gamma variables (every variable an error).

    Graphs are grown one variable at a time, each new variable joining any
    admissible set of existing checks, and deduplicated by canonical key.

    Returns:
        Subgraphs in a deterministic order (sorted by canonical key)
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    layer: Dict[str, TannerGraph] = {}
    seed = single_variable(gamma)
    layer[canonical_key(seed, range(1))] = seed
    for size in range(2, k + 1):
        grown: Dict[str, TannerGraph] = {}
        for g in layer.values():
            dist = check_distances(g)
            for chosen in attachments(g, girth_min, max_check_degree, dist=dist):
                child = add_variable(g, chosen)
                key = canonical_key(child, range(child.n))
                grown.setdefault(key, child)
        layer = grown
        logger.debug(f"{len(layer)} initial subgraphs with {size} variables")
    result = [layer[key] for key in sorted(layer)]
    logger.info(f"k={k}, girth>={girth_min}: {len(result)} initial subgraphs")
    return result
