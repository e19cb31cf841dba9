"""
Tanner graph representation for left-regular LDPC codes

Contains the TannerGraph and Syndrome types plus the graph measurements
(girth, syndrome, rank, minimum codeword weight) every decoder and
enumerator relies on.
"""

from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging
import math

import networkx as nx
import numpy as np

from ..exceptions import GraphConstructionError
from .states import Assignment

logger = logging.getLogger(__name__)

# Girth of a forest. Written as 0 wherever an integer column is required.
INFINITE_GIRTH = math.inf


class TannerGraph:
    """
    Immutable bipartite variable/check adjacency of a gamma-left-regular code.

    Variables are indexed in [0, n), checks in [0, m). ``var_adj[v]`` keeps the
    order in which the edges were declared; ``check_adj[c]`` is sorted.
    """

    __slots__ = ("n", "m", "gamma", "var_adj", "check_adj", "var_checks", "_hash")

    def __init__(self, var_adj: Sequence[Sequence[int]], m: Optional[int] = None,
                 gamma: Optional[int] = None):
        """
        Build a graph from per-variable check lists.

        Args:
            var_adj: For each variable, the indices of its incident checks
            m: Number of checks (default: largest referenced index + 1)
            gamma: Expected left degree (default: degree of variable 0, or 3 when empty)

        Raises:
            GraphConstructionError: on repeated edges, non-uniform degree or bad indices
        """
        rows = [tuple(int(c) for c in checks) for checks in var_adj]
        if gamma is None:
            gamma = len(rows[0]) if rows else 3
        if m is None:
            m = max((max(r) for r in rows if r), default=-1) + 1

        for v, checks in enumerate(rows):
            if len(checks) != gamma:
                raise GraphConstructionError(
                    f"Variable {v} has degree {len(checks)}, expected gamma={gamma}")
            if len(set(checks)) != len(checks):
                raise GraphConstructionError(f"Variable {v} has a repeated edge: {list(checks)}")
            for c in checks:
                if c < 0 or c >= m:
                    raise GraphConstructionError(f"Variable {v} references check {c} outside [0, {m})")

        check_lists: List[List[int]] = [[] for _ in range(m)]
        for v, checks in enumerate(rows):
            for c in checks:
                check_lists[c].append(v)

        self.n = len(rows)
        self.m = int(m)
        self.gamma = int(gamma)
        self.var_adj: Tuple[Tuple[int, ...], ...] = tuple(rows)
        self.check_adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(vs) for vs in check_lists)
        var_checks = np.array(rows, dtype=np.int64).reshape(self.n, self.gamma)
        var_checks.setflags(write=False)
        self.var_checks = var_checks
        self._hash: Optional[int] = None

    @classmethod
    def from_check_adj(cls, check_adj: Sequence[Sequence[int]], n: Optional[int] = None,
                       gamma: Optional[int] = None) -> "TannerGraph":
        """Build a graph from per-check variable lists"""
        if n is None:
            n = max((max(vs) for vs in check_adj if vs), default=-1) + 1
        var_adj: List[List[int]] = [[] for _ in range(n)]
        for c, variables in enumerate(check_adj):
            for v in variables:
                if v < 0 or v >= n:
                    raise GraphConstructionError(f"Check {c} references variable {v} outside [0, {n})")
                var_adj[v].append(c)
        return cls(var_adj, m=len(check_adj), gamma=gamma)

    @classmethod
    def from_parity_check(cls, H: np.ndarray) -> "TannerGraph":
        """Build a graph from a dense m x n 0/1 parity-check matrix"""
        H = np.asarray(H)
        if H.ndim != 2:
            raise GraphConstructionError(f"Parity-check matrix must be 2-D, got shape {H.shape}")
        if not np.isin(H, (0, 1)).all():
            raise GraphConstructionError("Parity-check matrix entries must be 0 or 1")
        m, n = H.shape
        var_adj = [np.flatnonzero(H[:, v]).tolist() for v in range(n)]
        return cls(var_adj, m=m)

    def to_parity_check(self) -> np.ndarray:
        H = np.zeros((self.m, self.n), dtype=np.uint8)
        for v, checks in enumerate(self.var_adj):
            H[list(checks), v] = 1
        return H

    @property
    def edge_count(self) -> int:
        return self.n * self.gamma

    def check_degrees(self) -> np.ndarray:
        return np.array([len(vs) for vs in self.check_adj], dtype=np.int64)

    def degree_profile(self) -> Dict[int, int]:
        """Number of checks per check degree"""
        degrees, counts = np.unique(self.check_degrees(), return_counts=True)
        return {int(d): int(c) for d, c in zip(degrees, counts)}

    @property
    def design_rate(self) -> float:
        return 1.0 - self.m / self.n if self.n else 0.0

    @property
    def rate(self) -> float:
        """True rate (n - rank H) / n"""
        if not self.n:
            return 0.0
        return (self.n - rank_gf2(self.to_parity_check())) / self.n

    def to_networkx(self) -> nx.Graph:
        """Bipartite networkx graph with nodes ('v', i) / ('c', j) and a 'kind' attribute"""
        graph = nx.Graph()
        graph.add_nodes_from((("v", v), {"kind": "var"}) for v in range(self.n))
        graph.add_nodes_from((("c", c), {"kind": "chk"}) for c in range(self.m))
        graph.add_edges_from((("v", v), ("c", c)) for v, checks in enumerate(self.var_adj)
                             for c in checks)
        return graph

    def induced(self, variables: Iterable[int]) -> Tuple["TannerGraph", List[int], List[int]]:
        """
        Subgraph induced by a set of variables together with all their checks.

        Returns:
            (subgraph, variable map, check map) where the maps list the original
            indices of the subgraph's variables and checks
        """
        var_map = sorted(set(int(v) for v in variables))
        check_map = sorted({c for v in var_map for c in self.var_adj[v]})
        check_index = {c: i for i, c in enumerate(check_map)}
        var_adj = [[check_index[c] for c in self.var_adj[v]] for v in var_map]
        return TannerGraph(var_adj, m=len(check_map), gamma=self.gamma), var_map, check_map

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TannerGraph):
            return NotImplemented
        return (self.n, self.m, self.gamma, self.var_adj) == (other.n, other.m, other.gamma, other.var_adj)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.m, self.gamma, self.var_adj))
        return self._hash

    def __repr__(self) -> str:
        return f"TannerGraph(n={self.n}, m={self.m}, gamma={self.gamma})"


class Syndrome:
    """Per-check satisfaction, True means satisfied"""

    __slots__ = ("sat",)

    def __init__(self, sat: np.ndarray):
        self.sat = np.asarray(sat, dtype=bool)

    @property
    def all_satisfied(self) -> bool:
        return bool(self.sat.all())

    def unsatisfied(self) -> List[int]:
        return np.flatnonzero(~self.sat).tolist()

    def weight(self) -> int:
        return int((~self.sat).sum())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Syndrome):
            return NotImplemented
        return bool(np.array_equal(self.sat, other.sat))

    def __repr__(self) -> str:
        return f"Syndrome(unsatisfied={self.unsatisfied()})"


def parity_of(g: TannerGraph, hard: np.ndarray) -> np.ndarray:
    """Per-check parity (0/1) of the hard values of its neighbours"""
    hard = np.asarray(hard)
    if g.n == 0:
        return np.zeros(g.m, dtype=np.int64)
    weights = np.repeat(hard.astype(np.int64), g.gamma)
    counts = np.bincount(g.var_checks.ravel(), weights=weights, minlength=g.m)
    return counts.astype(np.int64) % 2


def syndrome(g: TannerGraph, a) -> Syndrome:
    """
    Evaluate every check on an assignment.

    Args:
        g: The Tanner graph
        a: An Assignment, or a hard 0/1 word of length n

    Returns:
        Syndrome with sat[c] True iff the hard values around c sum to 0 mod 2
    """
    hard = a.hard() if isinstance(a, Assignment) else np.asarray(a)
    if hard.shape[0] != g.n:
        raise ValueError(f"Assignment length {hard.shape[0]} does not match n={g.n}")
    return Syndrome(parity_of(g, hard) == 0)


def girth(g: TannerGraph, stop_below: Optional[int] = None) -> float:
    """
    Exact shortest-cycle length by breadth-first search from every variable node.

    Args:
        g: The Tanner graph
        stop_below: Return as soon as a cycle shorter than this is found
            (the result is then an upper bound below ``stop_below``)

    Returns:
        Even integer >= 4, or INFINITE_GIRTH for a forest
    """
    n = g.n
    # Node ids: variables [0, n), checks [n, n + m)
    neighbours: List[Tuple[int, ...]] = [tuple(n + c for c in checks) for checks in g.var_adj]
    neighbours.extend(tuple(vs) for vs in g.check_adj)

    best = INFINITE_GIRTH
    total = n + g.m
    dist = np.full(total, -1, dtype=np.int64)
    parent = np.full(total, -1, dtype=np.int64)

    for root in range(n):
        touched = [root]
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            du = int(dist[u])
            if 2 * du + 1 >= best:
                break
            for w in neighbours[u]:
                if w == parent[u]:
                    continue
                if dist[w] < 0:
                    dist[w] = du + 1
                    parent[w] = u
                    touched.append(w)
                    queue.append(w)
                else:
                    best = min(best, du + int(dist[w]) + 1)
        for node in touched:
            dist[node] = -1
            parent[node] = -1
        if stop_below is not None and best < stop_below:
            break

    if best != INFINITE_GIRTH:
        best = int(best)
    logger.debug(f"girth of {g!r} = {best}")
    return best


def rank_gf2(H: np.ndarray) -> int:
    """Rank of a 0/1 matrix over GF(2)"""
    M = np.array(H, dtype=bool, copy=True)
    rows, cols = M.shape
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        pivots = np.flatnonzero(M[rank:, col])
        if pivots.size == 0:
            continue
        pivot = rank + int(pivots[0])
        if pivot != rank:
            M[[rank, pivot]] = M[[pivot, rank]]
        below = np.flatnonzero(M[:, col])
        below = below[below != rank]
        M[below] ^= M[rank]
        rank += 1
    return rank


def min_codeword_weight(g: TannerGraph, limit: int) -> Optional[int]:
    """
    Weight of the lightest nonzero codeword, if it is at most ``limit``.

    Exhaustive parity-repair search: fix the smallest support index, then
    repeatedly pick the first odd check and branch over its neighbours that
    are not yet in the support. Intended for small codes (n ~ 100).

    Returns:
        The minimum weight, or None when no nonzero codeword of weight <= limit exists
    """
    if limit < 1:
        return None
    best: List[int] = [limit + 1]
    parity = np.zeros(g.m, dtype=np.int8)
    in_support = np.zeros(g.n, dtype=bool)

    def toggle(v: int) -> None:
        in_support[v] = not in_support[v]
        for c in g.var_adj[v]:
            parity[c] ^= 1

    def search(lowest: int, weight: int) -> None:
        odd = np.flatnonzero(parity)
        if odd.size == 0:
            best[0] = min(best[0], weight)
            return
        # each extra variable can fix at most gamma odd checks
        if weight + math.ceil(odd.size / g.gamma) >= best[0]:
            return
        for u in g.check_adj[int(odd[0])]:
            if u <= lowest or in_support[u]:
                continue
            toggle(u)
            search(lowest, weight + 1)
            toggle(u)

    for v in range(g.n):
        toggle(v)
        search(v, 1)
        toggle(v)

    found = best[0] if best[0] <= limit else None
    logger.info(f"minimum codeword weight search (limit {limit}) on {g!r}: {found}")
    return found
