"""
Simulation module for twobit-ldpc

BSC sampling, Monte Carlo frame error rates and guaranteed-correction sweeps.
"""

from .channel import ErrorPattern, bsc_sample, sample_weight, enumerate_patterns, pattern_count, frame_rng
from .harness import (
    SimResult,
    SweepReport,
    VerificationReport,
    compare_frames,
    confidence_half_width,
    estimate_fer,
    sweep_exhaustive_weight,
    sweep_fixed_weight,
    verify_guaranteed_correction,
)

__all__ = [
    "ErrorPattern",
    "bsc_sample",
    "sample_weight",
    "enumerate_patterns",
    "pattern_count",
    "frame_rng",
    "SimResult",
    "SweepReport",
    "VerificationReport",
    "compare_frames",
    "confidence_half_width",
    "estimate_fer",
    "sweep_exhaustive_weight",
    "sweep_fixed_weight",
    "verify_guaranteed_correction",
]
