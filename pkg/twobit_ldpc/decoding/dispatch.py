"""
Decoder dispatch from a DecoderSpec
"""

from pathlib import Path
from typing import Optional, Sequence, Union
import logging

from ..config import DecoderSpec
from ..core.graph import TannerGraph
from ..parsing.cascade_spec import load_cascade, resolve_rule
from .engine import CascadeSpec, DecodeResult, decode_cascade, decode_parallel_bf, decode_two_bit
from .gallager import decode_gallager_b

logger = logging.getLogger(__name__)


class Decoder:
    """A DecoderSpec with its rules resolved, callable as decoder(g, y)"""

    def __init__(self, spec: DecoderSpec, gamma: Optional[int] = None,
                 base_dir: Optional[Union[str, Path]] = None):
        self.spec = spec
        self.rule = None
        self.cascade: Optional[CascadeSpec] = None
        if spec.kind == 'two-bit':
            self.rule = resolve_rule(str(spec.rule), base_dir, gamma)
        elif spec.kind == 'cascade':
            if spec.cascade:
                members = [(resolve_rule(name, base_dir, gamma), limit) for name, limit in spec.cascade]
                self.cascade = CascadeSpec(members)
            else:
                path = Path(str(spec.cascade_file))
                if base_dir is not None and not path.is_absolute():
                    path = Path(base_dir) / path
                self.cascade = load_cascade(path, gamma)

    @property
    def name(self) -> str:
        return self.spec.name

    @property
    def max_iterations(self) -> int:
        if self.cascade is not None:
            return self.cascade.total_iterations
        return self.spec.max_iter

    @property
    def member_count(self) -> int:
        return len(self.cascade.members) if self.cascade is not None else 1

    def __call__(self, g: TannerGraph, y: Sequence[int], record_trace: bool = False) -> DecodeResult:
        spec = self.spec
        if spec.kind == 'two-bit':
            return decode_two_bit(g, y, self.rule, spec.max_iter, record_trace=record_trace,
                                  detect_cycles=spec.detect_cycles)
        if spec.kind == 'parallel-bf':
            return decode_parallel_bf(g, y, spec.max_iter, record_trace=record_trace,
                                      detect_cycles=spec.detect_cycles)
        if spec.kind == 'gallager-b':
            return decode_gallager_b(g, y, spec.max_iter, spec.threshold, record_trace=record_trace)
        return decode_cascade(g, y, self.cascade, record_trace=record_trace,
                              detect_cycles=spec.detect_cycles)

    def __repr__(self) -> str:
        return f"Decoder({self.name!r})"


def decode(g: TannerGraph, y: Sequence[int], spec: DecoderSpec, record_trace: bool = False) -> DecodeResult:
    """Decode one received word with the decoder a spec describes"""
    return Decoder(spec, g.gamma)(g, y, record_trace=record_trace)
