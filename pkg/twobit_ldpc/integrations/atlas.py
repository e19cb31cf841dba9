"""
Atlas files: minimal failure graphs with their enumeration metadata

Layout:

    # twobit-ldpc atlas
    meta {"rule":"f1","k":4,"l":15,...}
    member errors=0 1 2 3 digest=<16 hex digits>
    <alist block of the member graph>
    end
    member ...

A rule that is not built in travels inside the header as its rule text.
Witness traces are not stored; loading re-simulates every member and checks
that it still fails with the recorded digest.
"""

from pathlib import Path
from typing import Dict, List, Optional, Union
import logging
import re

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from ..analysis.failures import Atlas, FailureGraph, simulate_on_subgraph
from ..core.rules import FlipRule, builtin_rule_names, get_builtin_rule
from ..parsing.cascade_spec import resolve_rule
from ..parsing.rule_text import emit_rule, parse_rule
from .alist import load_alist, store_alist

logger = logging.getLogger(__name__)

ATLAS_BANNER = "# twobit-ldpc atlas"

_MEMBER = re.compile(r'^member\s+errors=([\d ]*?)\s*digest=([0-9a-f]{16})$')


class AtlasMetadata(BaseModel):
    """Header record of an atlas file"""

    rule: str
    k: int = Field(..., ge=1)
    l: int = Field(..., ge=1)
    n_max: int = Field(..., ge=1)
    girth_min: int = Field(..., ge=4)
    covered_n: int = Field(..., ge=0)
    complete: bool
    max_check_degree: Optional[int] = None
    members: int = Field(0, ge=0)
    size_histogram: Dict[int, int] = Field(default_factory=dict)
    rule_text: Optional[str] = None

    @classmethod
    def from_atlas(cls, atlas: Atlas) -> "AtlasMetadata":
        return cls(rule=atlas.rule_name, k=atlas.k, l=atlas.l, n_max=atlas.n_max,
                   girth_min=atlas.girth_min, covered_n=atlas.covered_n, complete=atlas.complete,
                   max_check_degree=atlas.max_check_degree, members=len(atlas.members),
                   size_histogram=atlas.size_histogram(), rule_text=_embedded_rule_text(atlas.rule))


def _embedded_rule_text(rule: Optional[FlipRule]) -> Optional[str]:
    """Rule text for rules a reader cannot resolve by name"""
    if rule is None:
        return None
    if rule.name in builtin_rule_names() and np.array_equal(get_builtin_rule(rule.name).table, rule.table):
        return None
    return emit_rule(rule)


def dump_atlas(atlas: Atlas) -> str:
    lines = [ATLAS_BANNER, "meta " + AtlasMetadata.from_atlas(atlas).model_dump_json()]
    for member in atlas.members:
        errors = " ".join(str(v) for v in member.initial_errors)
        lines.append(f"member errors={errors} digest={member.digest}")
        lines.append(store_alist(member.graph).rstrip("\n"))
        lines.append("end")
    return "\n".join(lines) + "\n"


def load_atlas(text: str, rule: Optional[FlipRule] = None,
               base_dir: Optional[Union[str, Path]] = None) -> Atlas:
    """
    Parse atlas text and re-verify every member.

    Args:
        text: Atlas file contents
        rule: Rule to re-simulate with (default: resolved from the header: embedded rule text, then
            built-in name or rule file)
        base_dir: Directory for resolving a rule-file name in the header

    Raises:
        ValueError: malformed text, or a member that no longer fails with its digest
    """
    lines = [line.rstrip() for line in text.splitlines()]
    body = [(number, line) for number, line in enumerate(lines, 1) if line and line != ATLAS_BANNER]
    if not body or not body[0][1].startswith("meta "):
        raise ValueError("Atlas text must start with a 'meta {...}' line")
    try:
        meta = AtlasMetadata.model_validate_json(body[0][1][len("meta "):])
    except ValidationError as e:
        raise ValueError(f"Line {body[0][0]}: bad atlas metadata: {e}") from e
    if rule is None:
        rule = parse_rule(meta.rule_text) if meta.rule_text else resolve_rule(meta.rule, base_dir)
    elif rule.name != meta.rule:
        logger.warning(f"atlas was built for rule '{meta.rule}', verifying with '{rule.name}'")

    members: List[FailureGraph] = []
    index = 1
    while index < len(body):
        number, line = body[index]
        match = _MEMBER.match(line)
        if not match:
            raise ValueError(f"Line {number}: expected 'member errors=... digest=...'")
        block: List[str] = []
        index += 1
        while index < len(body) and body[index][1] != "end":
            block.append(body[index][1])
            index += 1
        if index == len(body):
            raise ValueError(f"Line {number}: member block is not closed by 'end'")
        index += 1

        graph = load_alist("\n".join(block))
        errors = [int(tok) for tok in match.group(1).split()]
        outcome = simulate_on_subgraph(graph, errors, rule, meta.l)
        if outcome.converged:
            raise ValueError(f"Line {number}: member converges under '{rule.name}' in "
                             f"{outcome.iterations_used} iterations")
        member = FailureGraph(graph, tuple(errors), outcome.witness, meta.l, rule.name)
        if member.digest != match.group(2):
            raise ValueError(f"Line {number}: witness digest {member.digest} does not match "
                             f"recorded {match.group(2)}")
        members.append(member)

    if len(members) != meta.members:
        raise ValueError(f"Header announces {meta.members} members, found {len(members)}")
    logger.debug(f"loaded atlas of {len(members)} members for '{rule.name}'")
    return Atlas(members, rule.name, meta.k, meta.l, meta.n_max, meta.girth_min,
                 meta.covered_n, meta.complete, meta.max_check_degree, rule=rule)


def write_atlas(atlas: Atlas, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_atlas(atlas), encoding='utf-8')
    logger.info(f"wrote atlas of {len(atlas)} members to {path}")


def read_atlas(path: Union[str, Path], rule: Optional[FlipRule] = None) -> Atlas:
    path = Path(path)
    return load_atlas(path.read_text(encoding='utf-8'), rule, base_dir=path.parent)
