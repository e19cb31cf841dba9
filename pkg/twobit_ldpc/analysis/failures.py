"""
Failure graph enumeration for two-bit flip rules

A failure graph is a small Tanner subgraph with k marked error variables on
which a rule does not converge within l iterations, assuming every variable
outside the subgraph stays correct. The enumerator starts from every initial
error subgraph and, stage by stage, adjoins variables that become corrupt at
the end of that stage. Graphs that fail are emitted and not expanded further.

Variables that become weak but never corrupt do not change any parity, so
they are never adjoined.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Any, Deque, Dict, List, Optional, Sequence, Tuple
import logging

import numpy as np
from networkx.algorithms import isomorphism

from ..core.graph import TannerGraph
from ..core.rules import FlipRule, check_arity
from ..core.states import VarState
from ..decoding.engine import TraceStep, decode_two_bit
from ..decoding.trace import trace_digest
from ..exceptions import RuleValidationError
from .canonical import canonical_key, colored_networkx
from .subgraphs import (
    add_variable,
    attachment_closes_short_cycle,
    check_distances,
    enumerate_initial_subgraphs,
)

logger = logging.getLogger(__name__)

_S0 = int(VarState.ZERO_STRONG)


@dataclass
class SubgraphOutcome:
    """Result of decoding on an isolated subgraph"""

    converged: bool
    iterations_used: int
    witness: List[TraceStep]


@dataclass
class FailureGraph:
    """A subgraph plus initial errors on which a rule fails within l iterations"""

    graph: TannerGraph
    initial_errors: Tuple[int, ...]
    witness: List[TraceStep]
    l: int
    rule_name: str
    key: str = ""

    def __post_init__(self) -> None:
        self.initial_errors = tuple(sorted(int(v) for v in self.initial_errors))
        if not self.key:
            self.key = canonical_key(self.graph, self.initial_errors)

    @property
    def var_count(self) -> int:
        return self.graph.n

    @property
    def check_count(self) -> int:
        return self.graph.m

    @property
    def k(self) -> int:
        return len(self.initial_errors)

    @property
    def digest(self) -> str:
        return trace_digest(self.witness)

    def final_corrupt(self) -> List[int]:
        return self.witness[-1].corrupt() if self.witness else list(self.initial_errors)

    def __repr__(self) -> str:
        return (f"FailureGraph(n={self.var_count}, m={self.check_count}, k={self.k}, "
                f"rule={self.rule_name!r}, l={self.l})")


@dataclass
class EnumerationResult:
    candidates: List[FailureGraph]
    complete: bool
    budget_exhausted: bool
    size_pruned: int
    stats: Dict[str, Any] = field(default_factory=dict)


@dataclass
class Atlas:
    """
    Minimal failure graphs of one rule.

    ``covered_n`` is the largest variable count for which the search ran to
    completion; ``complete`` means covered_n reached n_max.
    """

    members: List[FailureGraph]
    rule_name: str
    k: int
    l: int
    n_max: int
    girth_min: int
    covered_n: int
    complete: bool
    max_check_degree: Optional[int] = None
    stats: Dict[str, Any] = field(default_factory=dict)
    rule: Optional[FlipRule] = None

    def __len__(self) -> int:
        return len(self.members)

    def size_histogram(self) -> Dict[int, int]:
        histogram: Dict[int, int] = {}
        for member in self.members:
            histogram[member.var_count] = histogram.get(member.var_count, 0) + 1
        return dict(sorted(histogram.items()))


@dataclass
class _Node:
    graph: TannerGraph
    key: str
    unsat: np.ndarray           # (T+1) x m, unsatisfied checks after t updates
    converged_at: Optional[int]


def _require_zero_preserving(rule: FlipRule) -> None:
    if not rule.is_zero_preserving:
        raise RuleValidationError(
            f"Rule '{rule.name}' is not zero-preserving; correct variables outside a subgraph "
            f"could change state, so subgraph simulation is unsound")


def _dense_history(g: TannerGraph, errors: Sequence[int], rule: FlipRule,
                   l: int) -> Tuple[np.ndarray, Optional[int]]:
    """
    Run the rule on a subgraph with dense parity-check products.

    Returns:
        (unsat history with one row per time step, iteration of convergence or None)
    """
    H = g.to_parity_check().astype(np.int64)
    Ht = H.T
    states = np.full(g.n, _S0, dtype=np.int8)
    states[list(errors)] = int(VarState.ONE_STRONG)
    unsat = (H @ (states >> 1)) % 2 == 1
    unsat_before = unsat
    history = [unsat]
    for t in range(l):
        if not unsat.any():
            return np.array(history), t
        if rule.uses_check_memory:
            n_up = Ht @ (unsat & unsat_before)
            n_un = Ht @ (unsat & ~unsat_before)
            n_sp = Ht @ (~unsat & ~unsat_before)
            states = rule.table[states, n_up, n_un, n_sp]
        else:
            states = rule.table[states, Ht @ unsat]
        unsat_before = unsat
        unsat = (H @ (states >> 1)) % 2 == 1
        history.append(unsat)
    return np.array(history), (l if not unsat.any() else None)


def _corrupt_at_stage(rule: FlipRule, column_history: np.ndarray, stage: int) -> bool:
    """
    True when a new variable whose checks have the given unsat history
    (rows = time, columns = its existing checks; fresh checks are always
    satisfied) stays at hard value 0 until ``stage`` and is corrupt at ``stage``.
    """
    gamma = rule.gamma
    state = _S0
    for t in range(stage):
        if state >> 1:
            return False
        now = column_history[t]
        before = column_history[t - 1] if t else now
        if rule.uses_check_memory:
            n_up = int(np.count_nonzero(now & before))
            n_un = int(np.count_nonzero(now & ~before))
            n_sp = gamma - n_up - n_un - int(np.count_nonzero(~now & before))
            state = int(rule.table[state, n_up, n_un, n_sp])
        else:
            state = int(rule.table[state, int(np.count_nonzero(now))])
    return bool(state >> 1)


def simulate_on_subgraph(g: TannerGraph, initial_errors: Sequence[int], rule: FlipRule,
                         l: int) -> SubgraphOutcome:
    """
    Decode on an isolated subgraph with every outside variable held correct.

    Check satisfaction is the parity of the in-subgraph corrupt neighbours.

    Raises:
        RuleValidationError: rule is not zero-preserving
        ArityMismatchError: rule and graph disagree on gamma
    """
    _require_zero_preserving(rule)
    check_arity(rule, g.gamma)
    word = np.zeros(g.n, dtype=np.int8)
    word[list(initial_errors)] = 1
    result = decode_two_bit(g, word, rule, max_iter=l, record_trace=True)
    return SubgraphOutcome(result.converged, result.iterations_used, result.trace or [])


def _children(node: _Node, rule: FlipRule, stage: int, girth_min: int,
              max_check_degree: Optional[int]) -> List[TannerGraph]:
    """Graphs obtained by adjoining one variable that becomes corrupt at ``stage``"""
    g = node.graph
    window = node.unsat[:stage]
    active = set(np.flatnonzero(window.any(axis=0)).tolist())
    pool = list(range(g.m))
    if max_check_degree is not None:
        pool = [c for c in pool if len(g.check_adj[c]) < max_check_degree]
    dist = check_distances(g)
    children: List[TannerGraph] = []

    def extend(start: int, chosen: List[int]) -> None:
        if chosen and active.intersection(chosen):
            if _corrupt_at_stage(rule, window[:, chosen], stage):
                children.append(add_variable(g, chosen))
        if len(chosen) == rule.gamma:
            return
        for index in range(start, len(pool)):
            c = pool[index]
            if attachment_closes_short_cycle(dist, chosen + [c], girth_min):
                continue
            extend(index + 1, chosen + [c])

    extend(0, [])
    return children


def enumerate_failures(rule: FlipRule, k: int, l: int, n_max: int, girth_min: int = 8,
                       max_check_degree: Optional[int] = None,
                       max_nodes: Optional[int] = None) -> EnumerationResult:
    """
    Depth-staged search for failure graphs with k initial errors.

    Args:
        rule: Zero-preserving flip rule
        k: Number of initial errors
        l: Iteration limit a failure must survive
        n_max: Largest subgraph (in variables) explored
        girth_min: Minimum girth of every explored graph
        max_check_degree: Optional cap on in-subgraph check degree
        max_nodes: Budget on simulated graphs; exhausting it returns partial results

    Returns:
        EnumerationResult with candidates sorted by (variable count, key)

    Raises:
        RuleValidationError: rule is not zero-preserving
        ValueError: n_max < k or l < 1
    """
    _require_zero_preserving(rule)
    if n_max < k:
        raise ValueError(f"n_max={n_max} must be >= k={k}")
    if l < 1:
        raise ValueError(f"l must be >= 1, got {l}")

    errors = tuple(range(k))
    seen: Dict[str, Optional[_Node]] = {}
    emitted: Dict[str, FailureGraph] = {}
    stats: Dict[str, Any] = {"simulated": 0, "duplicates": 0, "pruned_converged": 0,
                             "disagreements": 0, "stage_sizes": []}
    size_pruned = 0
    budget_exhausted = False

    def visit(g: TannerGraph, key: str) -> Optional[_Node]:
        """Simulate a new graph; emit it when it fails, return it when it is expandable"""
        stats["simulated"] += 1
        unsat, converged_at = _dense_history(g, errors, rule, l)
        if converged_at is None:
            outcome = simulate_on_subgraph(g, errors, rule, l)
            if outcome.converged:
                stats["disagreements"] += 1
                logger.error(f"{rule.name}: engine converged on {key} where the dense run failed")
                return None
            emitted[key] = FailureGraph(g, errors, outcome.witness, l, rule.name, key)
            logger.debug(f"failure graph with {g.n} variables: {key}")
            return None
        return _Node(g, key, unsat, converged_at)

    frontier: List[_Node] = []
    for g in enumerate_initial_subgraphs(k, rule.gamma, girth_min, max_check_degree):
        key = canonical_key(g, errors)
        node = visit(g, key)
        seen[key] = node
        if node is not None:
            frontier.append(node)

    for stage in range(1, l + 1):
        if budget_exhausted:
            break
        worklist: Deque[_Node] = deque(frontier)
        next_frontier: List[_Node] = []
        while worklist:
            node = worklist.popleft()
            if node.converged_at is not None and node.converged_at < stage:
                stats["pruned_converged"] += 1
                continue
            next_frontier.append(node)
            for child in _children(node, rule, stage, girth_min, max_check_degree):
                if child.n > n_max:
                    size_pruned += 1
                    continue
                key = canonical_key(child, errors)
                if key in seen:
                    stats["duplicates"] += 1
                    continue
                if max_nodes is not None and stats["simulated"] >= max_nodes:
                    budget_exhausted = True
                    break
                child_node = visit(child, key)
                seen[key] = child_node
                if child_node is not None:
                    worklist.append(child_node)
            if budget_exhausted:
                logger.warning(f"{rule.name}: node budget {max_nodes} exhausted at stage {stage}")
                break
        frontier = next_frontier
        stats["stage_sizes"].append(len(frontier))
        logger.debug(f"stage {stage}: {len(frontier)} live graphs, {len(emitted)} failures")
        if not frontier:
            break

    candidates = sorted(emitted.values(), key=lambda f: (f.var_count, f.key))
    logger.info(f"{rule.name} k={k} l={l} n_max={n_max}: {len(candidates)} failure graphs, "
                f"{stats['simulated']} simulated, {size_pruned} size-pruned")
    return EnumerationResult(candidates, not budget_exhausted, budget_exhausted, size_pruned, stats)


_color_match = isomorphism.categorical_node_match("color", None)


def contains(big: FailureGraph, small: FailureGraph) -> bool:
    """
    True when ``small`` sits inside ``big`` as a variable-induced subgraph with
    error variables mapped onto error variables.
    """
    if small.var_count > big.var_count or small.k != big.k:
        return False
    matcher = isomorphism.GraphMatcher(colored_networkx(big.graph, big.initial_errors),
                                       colored_networkx(small.graph, small.initial_errors),
                                       node_match=_color_match)
    return matcher.subgraph_is_monomorphic()


def reduce_minimal(candidates: Sequence[FailureGraph]) -> List[FailureGraph]:
    """Drop every candidate that contains another candidate"""
    ordered = sorted(candidates, key=lambda f: (f.var_count, f.key))
    minimal: List[FailureGraph] = []
    keys = set()
    for candidate in ordered:
        if candidate.key in keys:
            continue
        if any(contains(candidate, kept) for kept in minimal):
            logger.debug(f"dropping {candidate.key}: contains a smaller failure graph")
            continue
        keys.add(candidate.key)
        minimal.append(candidate)
    return minimal


def enumerate_atlas(rule: FlipRule, k: int, l: int, n_max: int, girth_min: int = 8,
                    max_check_degree: Optional[int] = None,
                    max_nodes: Optional[int] = None) -> Atlas:
    """
    Minimal failure graphs by iterative deepening over the size bound.

    Each bound N = k..n_max is searched in full; when the node budget runs out
    the atlas keeps the last fully covered bound and is flagged incomplete.
    """
    covered = k - 1
    minimal: List[FailureGraph] = []
    stats: Dict[str, Any] = {"simulated": 0}
    for bound in range(k, n_max + 1):
        remaining = None if max_nodes is None else max_nodes - stats["simulated"]
        if remaining is not None and remaining <= 0:
            break
        result = enumerate_failures(rule, k, l, bound, girth_min, max_check_degree, remaining)
        stats["simulated"] += result.stats["simulated"]
        if result.budget_exhausted:
            logger.warning(f"{rule.name}: atlas covers sizes up to {covered} of {n_max}")
            break
        minimal = reduce_minimal(result.candidates)
        covered = bound
        logger.info(f"{rule.name}: bound {bound}: {len(minimal)} minimal failure graphs")
    return Atlas(minimal, rule.name, k, l, n_max, girth_min, covered, covered >= n_max,
                 max_check_degree, stats, rule)


def atlas_from_result(result: EnumerationResult, rule: FlipRule, k: int, l: int, n_max: int,
                      girth_min: int = 8, max_check_degree: Optional[int] = None) -> Atlas:
    """Minimal atlas of one enumeration run; a partial run covers no size at all"""
    covered = n_max if result.complete else k - 1
    return Atlas(reduce_minimal(result.candidates), rule.name, k, l, n_max, girth_min, covered,
                 result.complete, max_check_degree, dict(result.stats), rule)
