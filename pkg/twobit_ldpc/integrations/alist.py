"""
alist import/export

Layout:

    n m
    max_variable_degree max_check_degree
    n variable degrees
    m check degrees
    n lines of 1-based check indices (zero padded)
    m lines of 1-based variable indices (zero padded)
"""

from pathlib import Path
from typing import List, Union
import logging

from ..core.graph import TannerGraph
from ..exceptions import AlistFormatError, GraphConstructionError

logger = logging.getLogger(__name__)


def _ints(line: str, number: int) -> List[int]:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError as e:
        raise AlistFormatError(f"Line {number}: non-integer token in '{line.strip()}'") from e


def load_alist(text: str) -> TannerGraph:
    """
    Parse alist text into a TannerGraph.

    Raises:
        AlistFormatError: truncated text, bad counts, degree mismatches,
            out-of-range indices or inconsistent variable/check lists
    """
    lines = [(number, line) for number, line in enumerate(text.splitlines(), 1) if line.strip()]
    if len(lines) < 4:
        raise AlistFormatError(f"alist needs at least 4 header lines, found {len(lines)}")

    header = _ints(lines[0][1], lines[0][0])
    if len(header) != 2:
        raise AlistFormatError(f"Line {lines[0][0]}: expected 'n m'")
    n, m = header
    if n < 0 or m < 0:
        raise AlistFormatError("Negative dimensions")

    maxima = _ints(lines[1][1], lines[1][0])
    if len(maxima) != 2:
        raise AlistFormatError(f"Line {lines[1][0]}: expected two maximum degrees")
    var_degrees = _ints(lines[2][1], lines[2][0])
    check_degrees = _ints(lines[3][1], lines[3][0])
    if len(var_degrees) != n:
        raise AlistFormatError(f"Expected {n} variable degrees, found {len(var_degrees)}")
    if len(check_degrees) != m:
        raise AlistFormatError(f"Expected {m} check degrees, found {len(check_degrees)}")
    if var_degrees and max(var_degrees) > maxima[0]:
        raise AlistFormatError("A variable degree exceeds the declared maximum")
    if check_degrees and max(check_degrees) > maxima[1]:
        raise AlistFormatError("A check degree exceeds the declared maximum")

    body = lines[4:]
    if len(body) < n + m:
        raise AlistFormatError(f"Truncated alist: expected {n + m} adjacency lines, found {len(body)}")

    var_adj: List[List[int]] = []
    for v in range(n):
        number, line = body[v]
        entries = [x for x in _ints(line, number) if x != 0]
        if len(entries) != var_degrees[v]:
            raise AlistFormatError(f"Line {number}: variable {v + 1} lists {len(entries)} checks, "
                                   f"degree says {var_degrees[v]}")
        if any(x < 1 or x > m for x in entries):
            raise AlistFormatError(f"Line {number}: check index outside [1, {m}]")
        var_adj.append([x - 1 for x in entries])

    check_adj: List[List[int]] = []
    for c in range(m):
        number, line = body[n + c]
        entries = [x for x in _ints(line, number) if x != 0]
        if len(entries) != check_degrees[c]:
            raise AlistFormatError(f"Line {number}: check {c + 1} lists {len(entries)} variables, "
                                   f"degree says {check_degrees[c]}")
        if any(x < 1 or x > n for x in entries):
            raise AlistFormatError(f"Line {number}: variable index outside [1, {n}]")
        check_adj.append(sorted(x - 1 for x in entries))

    try:
        g = TannerGraph(var_adj, m=m)
    except GraphConstructionError as e:
        raise AlistFormatError(f"alist does not describe a left-regular graph: {e}") from e
    if [list(vs) for vs in g.check_adj] != check_adj:
        raise AlistFormatError("Variable and check adjacency lists disagree")
    logger.debug(f"loaded alist: n={n}, m={m}")
    return g


def store_alist(g: TannerGraph) -> str:
    """Render a graph as alist text"""
    check_degrees = [len(vs) for vs in g.check_adj]
    max_check = max(check_degrees, default=0)
    lines = [
        f"{g.n} {g.m}",
        f"{g.gamma if g.n else 0} {max_check}",
        " ".join(str(g.gamma) for _ in range(g.n)),
        " ".join(str(d) for d in check_degrees),
    ]
    for checks in g.var_adj:
        lines.append(" ".join(str(c + 1) for c in checks))
    for variables in g.check_adj:
        padded = [v + 1 for v in variables] + [0] * (max_check - len(variables))
        lines.append(" ".join(str(v) for v in padded))
    return "\n".join(lines) + "\n"


def read_alist(path: Union[str, Path]) -> TannerGraph:
    return load_alist(Path(path).read_text(encoding='utf-8'))


def write_alist(g: TannerGraph, path: Union[str, Path]) -> None:
    Path(path).write_text(store_alist(g), encoding='utf-8')
    logger.info(f"wrote alist n={g.n} m={g.m} to {path}")
