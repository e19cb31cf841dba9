"""
Shipped error configurations

Small Tanner subgraphs on which the behaviour of the decoders is known by
hand and used throughout the tests and the CLI fixtures.
"""

from typing import Any, Dict, List, Tuple
import logging

from ..core.graph import TannerGraph
from ..core.rules import get_builtin_rule
from ..core.states import VarState

logger = logging.getLogger(__name__)

# Eight-cycle v0-c0-v1-c1-v2-c2-v3-c3 with one leaf check per variable.
EIGHT_CYCLE_ADJ = [
    [0, 3, 4],
    [0, 1, 5],
    [1, 2, 6],
    [2, 3, 7],
]
EIGHT_CYCLE_OPPOSITE_ERRORS = (0, 2)
EIGHT_CYCLE_ADJACENT_ERRORS = (0, 1)

# Checks: 0..4 degree two, 5 and 6 degree three, 7..11 leaves.
WEIGHT_FOUR_ADJ = [
    [4, 5, 7],
    [1, 5, 8],
    [0, 1, 2],
    [0, 3, 4],
    [5, 6, 9],
    [2, 6, 10],
    [3, 6, 11],
]
WEIGHT_FOUR_ERRORS = (0, 2, 3, 5)


def eight_cycle_graph() -> TannerGraph:
    """Four variables on an eight-cycle; parallel flipping oscillates on opposite errors"""
    return TannerGraph(EIGHT_CYCLE_ADJ, m=8)


def weight_four_graph() -> TannerGraph:
    """
    Seven-variable configuration on which f1 reaches a fixed point from four errors.

    Two of the initial errors share check 0. After the first iteration five
    variables are weak; after the third every variable sees two satisfied
    checks and one unsatisfied check, and nothing changes again. f2 corrects
    the four errors in exactly 7 iterations.
    """
    return TannerGraph(WEIGHT_FOUR_ADJ, m=12)


def matches_fixed_point_narration(graph: TannerGraph, witness) -> bool:
    """
    True when an f1 witness weakens five variables in iteration 1 and sits at
    an all-strong fixed point from iteration 3 on, where every variable of the
    configuration sees two satisfied checks and one unsatisfied check.
    """
    if len(witness) < 4:
        return False
    weak_after_one = sum(1 for s in witness[1].states if not VarState(int(s)).strong)
    if weak_after_one != 5:
        return False
    final = witness[-1]
    if not all(VarState(int(s)).strong for s in final.states):
        return False
    if not all((step.states == final.states).all() for step in witness[3:]):
        return False
    unsat = ~final.sat
    return all(int(unsat[list(checks)].sum()) == 1 for checks in graph.var_adj)


def derive_weight_four_configuration(l: int = 15, n_max: int = 7) -> List[TannerGraph]:
    """
    Recover the weight-four configuration from the f1 failure enumeration.

    Returns every enumerated 7-variable failure graph whose witness matches
    the fixed-point narration.
    """
    from ..analysis.failures import enumerate_failures

    result = enumerate_failures(get_builtin_rule('f1'), k=4, l=l, n_max=n_max)
    found = [candidate.graph for candidate in result.candidates
             if candidate.var_count == 7 and matches_fixed_point_narration(candidate.graph, candidate.witness)]
    logger.info(f"{len(found)} enumerated graphs match the weight-four narration")
    return found


def get_configurations() -> Dict[str, Dict[str, Any]]:
    """Every shipped configuration with its graph and error support"""
    return {
        'eight-cycle': {
            'graph': eight_cycle_graph(),
            'errors': EIGHT_CYCLE_OPPOSITE_ERRORS,
            'description': 'Two opposite errors on an eight-cycle',
        },
        'eight-cycle-adjacent': {
            'graph': eight_cycle_graph(),
            'errors': EIGHT_CYCLE_ADJACENT_ERRORS,
            'description': 'Two neighbouring errors on an eight-cycle',
        },
        'weight-four': {
            'graph': weight_four_graph(),
            'errors': WEIGHT_FOUR_ERRORS,
            'description': 'Four errors that trap f1 in a fixed point',
        },
    }


def get_configuration(name: str) -> Tuple[TannerGraph, Tuple[int, ...]]:
    configurations = get_configurations()
    if name not in configurations:
        raise ValueError(f"Unknown configuration '{name}'. Available: {sorted(configurations)}")
    entry = configurations[name]
    return entry['graph'], entry['errors']
