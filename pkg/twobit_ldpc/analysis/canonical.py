"""
Canonical keys for Tanner subgraphs with marked error variables

Leaf checks (degree 1) are implied by the uniform left degree, so the key is
computed on variables plus checks of degree >= 2. Labeling uses color
refinement followed by individualization with full backtracking; the
lexicographically smallest certificate over all leaves of the search tree is
the canonical form.
"""

from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple
import logging

import networkx as nx
from networkx.algorithms import isomorphism

from ..core.graph import TannerGraph

logger = logging.getLogger(__name__)

ERR, VAR, CHK = 0, 1, 2
COLOR_NAMES = {ERR: "err", VAR: "var", CHK: "chk"}


def _compressed(g: TannerGraph, errors: Iterable[int]) -> Tuple[List[int], List[List[int]], List[Tuple[int, int]]]:
    """Initial colors, adjacency and edge list of the leaf-free colored graph"""
    error_set = set(errors)
    inner = [c for c in range(g.m) if len(g.check_adj[c]) >= 2]
    index = {c: g.n + i for i, c in enumerate(inner)}
    colors = [ERR if v in error_set else VAR for v in range(g.n)] + [CHK] * len(inner)
    adjacency: List[List[int]] = [[] for _ in colors]
    edges: List[Tuple[int, int]] = []
    for v, checks in enumerate(g.var_adj):
        for c in checks:
            if c in index:
                adjacency[v].append(index[c])
                adjacency[index[c]].append(v)
                edges.append((v, index[c]))
    return colors, adjacency, edges


def _relabel(signatures: Sequence[tuple]) -> List[int]:
    ranks = {sig: rank for rank, sig in enumerate(sorted(set(signatures)))}
    return [ranks[sig] for sig in signatures]


def _refine(colors: List[int], adjacency: List[List[int]]) -> List[int]:
    """Equitable partition by iterated neighbour-color multisets"""
    classes = len(set(colors))
    while True:
        signatures = [(colors[x], tuple(sorted(colors[y] for y in adjacency[x])))
                      for x in range(len(colors))]
        refined = _relabel(signatures)
        count = len(set(refined))
        colors = refined
        if count == classes:
            return colors
        classes = count


def _certificate(colors: List[int], base: List[int], edges: List[Tuple[int, int]]) -> tuple:
    node_colors = tuple(base[x] for x in sorted(range(len(colors)), key=lambda x: colors[x]))
    labelled = tuple(sorted((colors[a], colors[b]) for a, b in edges))
    return node_colors, labelled


def canonical_key(g: TannerGraph, errors: Iterable[int] = ()) -> str:
    """
    Canonical string of a Tanner subgraph with error-variable marking.

    Two (graph, errors) pairs get equal keys iff they are isomorphic as
    colored graphs (variables / error variables / checks).
    """
    base, adjacency, edges = _compressed(g, errors)
    best: List[tuple] = []

    def search(colors: List[int]) -> None:
        colors = _refine(colors, adjacency)
        if len(set(colors)) == len(colors):
            cert = _certificate(colors, base, edges)
            if not best or cert < best[0]:
                best[:] = [cert]
            return
        cells: Dict[int, List[int]] = {}
        for x, color in enumerate(colors):
            cells.setdefault(color, []).append(x)
        target = min((color for color, members in cells.items() if len(members) > 1),
                     key=lambda color: (len(cells[color]), color))
        for x in cells[target]:
            search(_relabel([(colors[y], 0 if y == x else 1) for y in range(len(colors))]))

    search(list(base))
    node_colors, labelled = best[0] if best else ((), ())
    head = "".join("evc"[c] for c in node_colors)
    body = ",".join(f"{a}-{b}" for a, b in labelled)
    return f"g{g.gamma}:{head}:{body}"


def colored_networkx(g: TannerGraph, errors: Iterable[int] = ()) -> nx.Graph:
    """Full bipartite graph (leaf checks included) with a 'color' node attribute"""
    error_set = set(errors)
    graph = nx.Graph()
    for v in range(g.n):
        graph.add_node(("v", v), color="err" if v in error_set else "var")
    for c in range(g.m):
        graph.add_node(("c", c), color="chk")
    graph.add_edges_from((("v", v), ("c", c)) for v, checks in enumerate(g.var_adj) for c in checks)
    return graph


_color_match = isomorphism.categorical_node_match("color", None)


def is_isomorphic_colored(a: TannerGraph, a_errors: Iterable[int],
                          b: TannerGraph, b_errors: Iterable[int]) -> bool:
    """Brute-force colored isomorphism through networkx"""
    return nx.is_isomorphic(colored_networkx(a, a_errors), colored_networkx(b, b_errors),
                            node_match=_color_match)


def error_set(errors: Iterable[int]) -> FrozenSet[int]:
    return frozenset(int(v) for v in errors)
