"""
Base matrix text format

    <rows> <cols> <p>
    <rows lines of cols integers>

``-1`` marks an empty circulant. A cell written ``a+b`` superposes two
circulants in one block.
"""

from typing import List, Tuple
import logging

from ..core.construction import BaseMatrix, Cell, cell_shifts
from ..core.validators import validate_base_matrix
from ..exceptions import BaseMatrixError

logger = logging.getLogger(__name__)


def _parse_cell(token: str) -> Cell:
    if '+' in token:
        return tuple(int(part) for part in token.split('+'))
    return int(token)


def parse_base_matrix(text: str) -> Tuple[BaseMatrix, int]:
    """
    Parse base-matrix text.

    Returns:
        (base, p)

    Raises:
        BaseMatrixError: bad header, wrong row or column count, bad cells
    """
    lines = [line.split('#', 1)[0].strip() for line in text.splitlines()]
    lines = [line for line in lines if line]
    if not lines:
        raise BaseMatrixError("Base matrix text is empty")
    try:
        rows, cols, p = (int(tok) for tok in lines[0].split())
    except ValueError as e:
        raise BaseMatrixError(f"Header must be '<rows> <cols> <p>', got '{lines[0]}'") from e

    body = lines[1:]
    if len(body) != rows:
        raise BaseMatrixError(f"Header declares {rows} rows, found {len(body)}")

    base: BaseMatrix = []
    for r, line in enumerate(body):
        tokens = line.split()
        if len(tokens) != cols:
            raise BaseMatrixError(f"Row {r} has {len(tokens)} entries, expected {cols}")
        try:
            base.append([_parse_cell(tok) for tok in tokens])
        except ValueError as e:
            raise BaseMatrixError(f"Row {r}: {e}") from e

    result = validate_base_matrix(base, p)
    if not result['valid']:
        raise BaseMatrixError("; ".join(result['errors']))
    for warning in result['warnings']:
        logger.warning(warning)
    return base, p


def emit_base_matrix(base: BaseMatrix, p: int) -> str:
    def render(cell: Cell) -> str:
        shifts = cell_shifts(cell)
        return "-1" if not shifts else "+".join(str(s) for s in shifts)

    rows = len(base)
    cols = len(base[0]) if base else 0
    lines: List[str] = [f"{rows} {cols} {p}"]
    lines.extend(" ".join(render(cell) for cell in row) for row in base)
    return "\n".join(lines) + "\n"
