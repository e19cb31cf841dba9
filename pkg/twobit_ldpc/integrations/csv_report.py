"""
CSV and plot-data output for simulation results

CSV columns and formatting:

    alpha        %.6g
    frames       integer
    frame_errors integer
    fer, ber     %.6e
    avg_iters    %.4f
    ci95         %.6e
    decoder      text (quoted when it contains a comma)
    seed         integer

Rows are sorted by (decoder, alpha).
"""

from typing import Dict, List, Sequence
import csv
import io
import logging

from ..simulation.harness import SimResult

logger = logging.getLogger(__name__)

CSV_HEADER = ["alpha", "frames", "frame_errors", "fer", "ber", "avg_iters", "ci95", "decoder", "seed"]


def _row(result: SimResult) -> List[str]:
    return [
        f"{result.alpha:.6g}",
        str(result.frames_run),
        str(result.frame_errors),
        f"{result.fer:.6e}",
        f"{result.ber:.6e}",
        f"{result.avg_iterations:.4f}",
        f"{result.ci95:.6e}",
        result.decoder,
        str(result.seed),
    ]


def emit_csv(results: Sequence[SimResult]) -> str:
    """Render results as CSV text, header first"""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for result in sorted(results, key=lambda r: (r.decoder, r.alpha)):
        writer.writerow(_row(result))
    return buffer.getvalue()


def parse_csv(text: str) -> List[SimResult]:
    """
    Parse CSV written by emit_csv.

    Raises:
        ValueError: Missing header or malformed row
    """
    reader = csv.reader(io.StringIO(text))
    rows = list(reader)
    if not rows or rows[0] != CSV_HEADER:
        raise ValueError(f"CSV header must be {','.join(CSV_HEADER)}")
    results: List[SimResult] = []
    for number, row in enumerate(rows[1:], 2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            raise ValueError(f"Row {number}: expected {len(CSV_HEADER)} fields, got {len(row)}")
        fields: Dict[str, str] = dict(zip(CSV_HEADER, row))
        try:
            results.append(SimResult(
                alpha=float(fields["alpha"]),
                frames_run=int(fields["frames"]),
                frame_errors=int(fields["frame_errors"]),
                fer=float(fields["fer"]),
                ber=float(fields["ber"]),
                avg_iterations=float(fields["avg_iters"]),
                ci95=float(fields["ci95"]),
                decoder=fields["decoder"],
                seed=int(fields["seed"]),
            ))
        except ValueError as e:
            raise ValueError(f"Row {number}: {e}") from e
    return results


def emit_plot_data(results: Sequence[SimResult]) -> str:
    """
    Whitespace table for external plotting: one block per decoder, ``alpha fer``
    per line, alpha ascending. Plot alpha on a log scale.
    """
    blocks: Dict[str, List[SimResult]] = {}
    for result in results:
        blocks.setdefault(result.decoder, []).append(result)
    lines: List[str] = []
    for decoder in sorted(blocks):
        lines.append(f"# {decoder}")
        for result in sorted(blocks[decoder], key=lambda r: r.alpha):
            lines.append(f"{result.alpha:.6g} {result.fer:.6e}")
        lines.append("")
    return "\n".join(lines)
