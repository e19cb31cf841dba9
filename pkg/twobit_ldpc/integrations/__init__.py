"""
Integrations module for twobit-ldpc

Machine-readable formats shared with other tools: alist parity-check files,
CSV and plot data for simulation results, and atlas files.
"""

from .alist import load_alist, store_alist, read_alist, write_alist
from .csv_report import emit_csv, parse_csv, emit_plot_data, CSV_HEADER
from .atlas import AtlasMetadata, dump_atlas, load_atlas, read_atlas, write_atlas

__all__ = [
    "load_alist",
    "store_alist",
    "read_alist",
    "write_alist",
    "emit_csv",
    "parse_csv",
    "emit_plot_data",
    "CSV_HEADER",
    "AtlasMetadata",
    "dump_atlas",
    "load_atlas",
    "read_atlas",
    "write_atlas",
]
