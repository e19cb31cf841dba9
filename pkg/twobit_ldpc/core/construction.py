"""
Quasi-cyclic code construction

A base matrix holds one circulant exponent per cell, or -1 for an empty
cell. Variable ``col * p + j`` is joined to check
``row * p + ((shift + j) mod p)`` for every non-empty cell (row, col).
A cell may also hold a tuple of shifts, which superposes several
circulants in one block.
"""

from itertools import permutations, product
from typing import List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from ..exceptions import BaseMatrixError, SearchExhaustedError
from .graph import TannerGraph, girth

logger = logging.getLogger(__name__)

Cell = Union[int, Tuple[int, ...]]
BaseMatrix = List[List[Cell]]

# Searches with at most this many normalised shift tuples run exhaustively
EXHAUSTIVE_LIMIT = 250_000


def cell_shifts(cell: Cell) -> Tuple[int, ...]:
    """Shifts stored in one base cell; () for an empty cell"""
    if isinstance(cell, (tuple, list)):
        return tuple(int(s) for s in cell)
    return () if int(cell) < 0 else (int(cell),)


def base_column_weights(base: Sequence[Sequence[Cell]]) -> List[int]:
    if not base:
        return []
    cols = len(base[0])
    return [sum(len(cell_shifts(row[col])) for row in base) for col in range(cols)]


def build_qc_code(base: Sequence[Sequence[Cell]], p: int) -> TannerGraph:
    """
    Expand a base matrix of circulant exponents into a Tanner graph.

    Args:
        base: rows x cols matrix; -1 marks an empty circulant
        p: Circulant size

    Returns:
        TannerGraph with n = p * cols and m = p * rows

    Raises:
        BaseMatrixError: ragged base, shifts outside [0, p), non-uniform column
            weight, or two equal shifts in one cell (a multi-edge)
    """
    if p < 1:
        raise BaseMatrixError(f"Circulant size must be >= 1, got {p}")
    rows = len(base)
    if rows == 0:
        raise BaseMatrixError("Base matrix has no rows")
    cols = len(base[0])
    if any(len(row) != cols for row in base):
        raise BaseMatrixError("Base matrix rows have different lengths")

    for r, row in enumerate(base):
        for c, cell in enumerate(row):
            shifts = cell_shifts(cell)
            for s in shifts:
                if s < 0 or s >= p:
                    raise BaseMatrixError(f"Shift {s} at ({r}, {c}) outside [0, {p})")
            if len(set(shifts)) != len(shifts):
                raise BaseMatrixError(f"Repeated shift in cell ({r}, {c}) creates multi-edges: {shifts}")

    weights = base_column_weights(base)
    if len(set(weights)) > 1:
        raise BaseMatrixError(f"Base columns have different weights {weights}; the code must be left-regular")
    gamma = weights[0] if weights else 0
    if gamma == 0:
        raise BaseMatrixError("Base matrix has an empty column")

    var_adj: List[List[int]] = []
    for c in range(cols):
        for j in range(p):
            checks = [r * p + (s + j) % p for r in range(rows) for s in cell_shifts(base[r][c])]
            var_adj.append(checks)

    g = TannerGraph(var_adj, m=rows * p, gamma=gamma)
    logger.info(f"built QC code {rows}x{cols} p={p}: n={g.n}, m={g.m}, gamma={gamma}")
    return g


def qc_shift_permutation(cols: int, p: int, shift: int = 1, rows: Optional[int] = None
                         ) -> Tuple[np.ndarray, Optional[np.ndarray]]:
    """
    Relabeling that cyclically shifts every block column (and block row) by ``shift``.

    Returns:
        (variable permutation, check permutation or None when rows is not given)
    """
    var_perm = np.array([c * p + (j + shift) % p for c in range(cols) for j in range(p)], dtype=np.int64)
    check_perm = None
    if rows is not None:
        check_perm = np.array([r * p + (j + shift) % p for r in range(rows) for j in range(p)],
                              dtype=np.int64)
    return var_perm, check_perm


def is_automorphism(g: TannerGraph, var_perm: Sequence[int], check_perm: Sequence[int]) -> bool:
    """True when the relabeling maps the edge set onto itself"""
    edges = {(v, c) for v, checks in enumerate(g.var_adj) for c in checks}
    mapped = {(int(var_perm[v]), int(check_perm[c])) for v, c in edges}
    return mapped == edges


def _valid_candidates(fixed: np.ndarray, grids: List[np.ndarray], p: int,
                      target_girth: int) -> np.ndarray:
    """
    Mask over candidate shift tuples for the next column.

    Args:
        fixed: rows x k shifts of the columns placed so far
        grids: per-row candidate shift arrays (all the same shape)

    A candidate is rejected when it closes a zero-sum non-backtracking walk of
    length 4 (two columns) or, for target 8, length 6 (three columns).
    """
    rows, placed = fixed.shape
    mask = np.ones(grids[0].shape, dtype=bool)
    for c in range(placed):
        for r1 in range(rows):
            for r2 in range(r1 + 1, rows):
                total = grids[r1] - grids[r2] + fixed[r2, c] - fixed[r1, c]
                mask &= (total % p) != 0
    if target_girth >= 8 and rows >= 3:
        for c1 in range(placed):
            for c2 in range(placed):
                if c1 == c2:
                    continue
                for r0, r1, r2 in permutations(range(rows), 3):
                    total = (grids[r0] - fixed[r0, c1] + fixed[r1, c1] - fixed[r1, c2]
                             + fixed[r2, c2] - grids[r2])
                    mask &= (total % p) != 0
    return mask


def _candidate_grid(rows: int, p: int) -> List[np.ndarray]:
    """All shift tuples for one column with row 0 fixed at 0"""
    axes = np.meshgrid(*([np.arange(p)] * (rows - 1)), indexing="ij")
    flat = [np.zeros(p ** (rows - 1), dtype=np.int64)]
    flat.extend(axis.ravel().astype(np.int64) for axis in axes)
    return flat


def find_girth8_shifts(rows: int, cols: int, p: int, seed: int = 0, max_attempts: int = 200,
                       target_girth: int = 8) -> List[List[int]]:
    """
    Search a fully populated base matrix whose QC expansion has girth >= target.

    Row 0 and column 0 are normalised to shift 0. Tiny searches run
    exhaustively; otherwise columns are placed greedily with seeded random
    choices among the admissible shift tuples, restarting on a dead end.

    Args:
        rows: Number of block rows (the left degree)
        cols: Number of block columns
        p: Circulant size
        seed: Seed for the random choices
        max_attempts: Restarts allowed before giving up
        target_girth: 6 or 8

    Raises:
        SearchExhaustedError: no admissible base found
    """
    if target_girth not in (6, 8):
        raise ValueError(f"target_girth must be 6 or 8, got {target_girth}")
    if rows < 1 or cols < 1 or p < 1:
        raise ValueError(f"rows, cols and p must be positive, got {rows}, {cols}, {p}")

    rng = np.random.default_rng(seed)
    grids = _candidate_grid(rows, p)
    space = p ** ((rows - 1) * (cols - 1))

    if space <= EXHAUSTIVE_LIMIT:
        logger.info(f"exhaustive shift search over {space} tuples ({rows}x{cols}, p={p})")
        found = _exhaustive_search(rows, cols, p, grids, rng, target_girth)
        if found is None:
            raise SearchExhaustedError(
                f"No {rows}x{cols} base with p={p} reaches girth {target_girth} (exhaustive)")
        return _verified(found, p, target_girth)

    for attempt in range(1, max_attempts + 1):
        fixed = np.zeros((rows, 1), dtype=np.int64)
        for _ in range(1, cols):
            mask = _valid_candidates(fixed, grids, p, target_girth)
            choices = np.flatnonzero(mask)
            if choices.size == 0:
                break
            pick = int(rng.choice(choices))
            column = np.array([grid[pick] for grid in grids], dtype=np.int64).reshape(rows, 1)
            fixed = np.hstack([fixed, column])
        if fixed.shape[1] == cols:
            logger.info(f"shift search succeeded on attempt {attempt}")
            return _verified(fixed.tolist(), p, target_girth)
        logger.debug(f"attempt {attempt} stalled after {fixed.shape[1]} columns")

    raise SearchExhaustedError(
        f"No {rows}x{cols} base with p={p} reaching girth {target_girth} after {max_attempts} attempts")


def _exhaustive_search(rows: int, cols: int, p: int, grids: List[np.ndarray],
                       rng: np.random.Generator, target_girth: int) -> Optional[List[List[int]]]:
    order = rng.permutation(grids[0].shape[0])

    def extend(fixed: np.ndarray) -> Optional[np.ndarray]:
        if fixed.shape[1] == cols:
            return fixed
        mask = _valid_candidates(fixed, grids, p, target_girth)
        for pick in order[mask[order]]:
            column = np.array([grid[pick] for grid in grids], dtype=np.int64).reshape(rows, 1)
            result = extend(np.hstack([fixed, column]))
            if result is not None:
                return result
        return None

    result = extend(np.zeros((rows, 1), dtype=np.int64))
    return None if result is None else result.tolist()


def _verified(base: List[List[int]], p: int, target_girth: int) -> List[List[int]]:
    g = build_qc_code(base, p)
    measured = girth(g, stop_below=target_girth)
    if measured < target_girth:
        raise SearchExhaustedError(f"Shift search produced girth {measured} < {target_girth}")
    return [[int(s) for s in row] for row in base]


def all_normalised_bases(rows: int, cols: int, p: int):
    """Every base with row 0 and column 0 fixed at 0 (for tiny exhaustive checks)"""
    free = (rows - 1) * (cols - 1)
    for values in product(range(p), repeat=free):
        it = iter(values)
        base = [[0] * cols]
        for _ in range(1, rows):
            base.append([0] + [next(it) for _ in range(1, cols)])
        yield base
