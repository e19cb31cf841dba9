"""
Convergence certificates from an atlas of minimal failure graphs

A decoder is certified on (code, error support) when no atlas member with the
same number of initial errors embeds into the code with its error variables
on the support. The condition is sufficient only: a found embedding makes the
answer "unknown", never "fails".
"""

from typing import Dict, List, Literal, Optional, Sequence, Set
import logging
import time

from networkx.algorithms import isomorphism
from pydantic import BaseModel, Field

from ..core.graph import TannerGraph
from .canonical import colored_networkx
from .failures import Atlas, FailureGraph

logger = logging.getLogger(__name__)

_color_match = isomorphism.categorical_node_match("color", None)


class CertificationResult(BaseModel):
    """Outcome of certify_convergence"""

    status: Literal['certified', 'unknown']
    errors: List[int]
    rule: str
    l: int
    reason: str = ""
    caveats: List[str] = Field(default_factory=list)
    member_key: Optional[str] = None
    embedding: Optional[Dict[int, int]] = Field(
        default=None, description="atlas member variable -> code variable")
    members_checked: int = 0

    @property
    def certified(self) -> bool:
        return self.status == 'certified'


def variable_ball(g: TannerGraph, seeds: Sequence[int], radius: int) -> List[int]:
    """Variables within ``radius`` variable-to-variable hops of the seeds"""
    reached: Set[int] = set(int(v) for v in seeds)
    frontier = list(reached)
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for c in g.var_adj[v]:
                for w in g.check_adj[c]:
                    if w not in reached:
                        reached.add(w)
                        nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return sorted(reached)


def _first_embedding(big, small) -> Optional[Dict]:
    matcher = isomorphism.GraphMatcher(big, small, node_match=_color_match)
    for mapping in matcher.subgraph_monomorphisms_iter():
        return mapping
    return None


def certify_convergence(g: TannerGraph, errors: Sequence[int], atlas: Atlas,
                        l: Optional[int] = None, timeout: Optional[float] = None,
                        trust_partial: bool = False) -> CertificationResult:
    """
    Certify that the atlas rule converges on ``g`` from the error support.

    Args:
        g: Code Tanner graph
        errors: Support of the initial error pattern
        atlas: Minimal failure graphs of the rule
        l: Iteration count the certificate is for (default: the atlas's)
        timeout: Seconds allowed for the containment search; overrun gives "unknown"
        trust_partial: Certify with an incomplete atlas (adds a caveat)

    Raises:
        ValueError: l differs from the atlas iteration count, or errors out of range
    """
    if l is None:
        l = atlas.l
    if l != atlas.l:
        raise ValueError(f"Atlas was enumerated for l={atlas.l}, cannot certify l={l}")
    support = sorted(set(int(v) for v in errors))
    if support and (support[0] < 0 or support[-1] >= g.n):
        raise ValueError(f"Error indices must lie in [0, {g.n})")

    result = CertificationResult(status='certified', errors=support, rule=atlas.rule_name, l=l)
    if not atlas.members:
        result.caveats.append(
            f"empty atlas: covers failure graphs with up to {atlas.covered_n} variables only")
        return result
    if not atlas.complete:
        if not trust_partial:
            result.status = 'unknown'
            result.reason = f"atlas incomplete (covers up to {atlas.covered_n} of {atlas.n_max} variables)"
            return result
        result.caveats.append(f"partial atlas trusted up to {atlas.covered_n} variables")

    relevant = [member for member in atlas.members if member.k == len(support)]
    if not relevant:
        result.caveats.append(
            f"no atlas member has {len(support)} initial errors (atlas k={atlas.k})")
        return result

    ball = variable_ball(g, support, max(0, atlas.covered_n - len(support)))
    sub, var_map, _ = g.induced(ball)
    local = {v: i for i, v in enumerate(var_map)}
    big = colored_networkx(sub, [local[v] for v in support])
    logger.debug(f"containment search on {sub.n} variables for {len(relevant)} atlas members")

    deadline = None if timeout is None else time.monotonic() + timeout
    for member in relevant:
        if deadline is not None and time.monotonic() > deadline:
            result.status = 'unknown'
            result.reason = f"timeout after {result.members_checked} of {len(relevant)} members"
            logger.warning(result.reason)
            return result
        mapping = _first_embedding(big, colored_networkx(member.graph, member.initial_errors))
        result.members_checked += 1
        if mapping is not None:
            result.status = 'unknown'
            result.reason = f"atlas member with {member.var_count} variables embeds around the errors"
            result.member_key = member.key
            result.embedding = {small[1]: var_map[node[1]] for node, small in mapping.items()
                                if node[0] == "v"}
            return result
    return result


def embed_in_code(failure_graph: FailureGraph, host: TannerGraph) -> Optional[Dict[int, int]]:
    """
    Embedding of a failure graph's variables into a host code, or None.

    Error variables are matched like any other variable.
    """
    mapping = _first_embedding(colored_networkx(host), colored_networkx(failure_graph.graph))
    if mapping is None:
        return None
    return {small[1]: node[1] for node, small in mapping.items() if node[0] == "v"}
