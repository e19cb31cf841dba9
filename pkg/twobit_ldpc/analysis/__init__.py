"""
Analysis module for twobit-ldpc

Failure graph enumeration, canonical keys for colored Tanner subgraphs and
convergence certificates derived from an atlas of minimal failure graphs.
"""

from .canonical import canonical_key, colored_networkx, is_isomorphic_colored
from .subgraphs import enumerate_initial_subgraphs
from .failures import (
    Atlas,
    EnumerationResult,
    FailureGraph,
    SubgraphOutcome,
    atlas_from_result,
    contains,
    enumerate_atlas,
    enumerate_failures,
    reduce_minimal,
    simulate_on_subgraph,
)
from .certify import CertificationResult, certify_convergence, embed_in_code

__all__ = [
    "canonical_key",
    "colored_networkx",
    "is_isomorphic_colored",
    "enumerate_initial_subgraphs",
    "Atlas",
    "EnumerationResult",
    "FailureGraph",
    "SubgraphOutcome",
    "contains",
    "atlas_from_result",
    "enumerate_atlas",
    "enumerate_failures",
    "reduce_minimal",
    "simulate_on_subgraph",
    "CertificationResult",
    "certify_convergence",
    "embed_in_code",
]
