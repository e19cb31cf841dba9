"""
Validation utilities for twobit-ldpc

Contains functions for validating graphs, base matrices and error patterns
before they reach a decoder or an enumerator. All return the same result
dictionary shape: valid / errors / warnings plus a few domain fields.
"""

from typing import Any, Dict, Optional, Sequence
import logging

from .construction import base_column_weights, cell_shifts
from .graph import INFINITE_GIRTH, TannerGraph, girth

logger = logging.getLogger(__name__)


def validate_graph(g: TannerGraph, girth_min: Optional[int] = None,
                   gamma: Optional[int] = None) -> Dict[str, Any]:
    """
    Validate a Tanner graph against decoding and enumeration preconditions.

    Args:
        g: The graph to validate
        girth_min: Required minimum girth (skipped when None)
        gamma: Required left degree (skipped when None)

    Returns:
        Dictionary with validation results including:
        - valid: Boolean indicating if the graph is usable
        - errors: List of error messages
        - warnings: List of warning messages
        - n, m, gamma: Dimensions
        - girth: Measured girth (0 for a forest)
        - degree_profile: Check degree histogram
    """
    result: Dict[str, Any] = {
        'valid': True,
        'errors': [],
        'warnings': [],
        'n': g.n,
        'm': g.m,
        'gamma': g.gamma,
        'girth': 0,
        'degree_profile': {},
    }

    if gamma is not None and g.gamma != gamma:
        result['errors'].append(f"Left degree {g.gamma} does not match required gamma={gamma}")

    profile = g.degree_profile()
    result['degree_profile'] = profile
    if profile.get(0):
        result['warnings'].append(f"{profile[0]} checks have no neighbours")
    if profile.get(1) and g.n > 0 and profile[1] == g.m:
        result['warnings'].append("Every check has degree 1; the graph is a forest")

    measured = girth(g)
    result['girth'] = 0 if measured == INFINITE_GIRTH else int(measured)
    if girth_min is not None and measured < girth_min:
        result['errors'].append(f"Girth {measured} is below the required minimum {girth_min}")

    if g.n and g.m > g.n:
        result['warnings'].append(f"More checks ({g.m}) than variables ({g.n})")

    result['valid'] = len(result['errors']) == 0
    return result


def validate_base_matrix(base: Sequence[Sequence[Any]], p: int) -> Dict[str, Any]:
    """
    Validate a QC base matrix without building the code.

    Returns:
        Dictionary with valid / errors / warnings plus rows, cols and column_weights
    """
    result: Dict[str, Any] = {
        'valid': True,
        'errors': [],
        'warnings': [],
        'rows': len(base),
        'cols': len(base[0]) if base else 0,
        'column_weights': [],
    }

    if p < 1:
        result['errors'].append(f"Circulant size must be >= 1, got {p}")
    if not base:
        result['errors'].append("Base matrix has no rows")
        result['valid'] = False
        return result
    if any(len(row) != result['cols'] for row in base):
        result['errors'].append("Base matrix rows have different lengths")
        result['valid'] = False
        return result

    for r, row in enumerate(base):
        for c, cell in enumerate(row):
            try:
                shifts = cell_shifts(cell)
            except (TypeError, ValueError):
                result['errors'].append(f"Cell ({r}, {c}) is not a shift: {cell!r}")
                continue
            if any(s < 0 or s >= max(p, 1) for s in shifts):
                result['errors'].append(f"Cell ({r}, {c}) has a shift outside [0, {p}): {shifts}")
            if len(set(shifts)) != len(shifts):
                result['errors'].append(f"Cell ({r}, {c}) repeats a shift and would create multi-edges")

    if not result['errors']:
        weights = base_column_weights(base)
        result['column_weights'] = weights
        if len(set(weights)) > 1:
            result['errors'].append(f"Column weights differ: {weights}")
        elif weights and weights[0] != 3:
            result['warnings'].append(f"Column weight {weights[0]}; shipped rules target gamma=3")

    result['valid'] = len(result['errors']) == 0
    return result


def validate_error_pattern(indices: Sequence[int], n: int) -> Dict[str, Any]:
    """Validate variable indices given as an error support"""
    result: Dict[str, Any] = {
        'valid': True,
        'errors': [],
        'warnings': [],
        'weight': len(set(indices)),
    }
    for index in indices:
        if index < 0 or index >= n:
            result['errors'].append(f"Variable index {index} outside [0, {n})")
    if len(set(indices)) != len(indices):
        result['warnings'].append("Repeated indices were merged")
    result['valid'] = len(result['errors']) == 0
    return result
