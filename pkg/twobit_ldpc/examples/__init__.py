"""
Examples module for twobit-ldpc

Contains the shipped error configurations and ready-made decoder recipes.
"""

from .configurations import (
    eight_cycle_graph,
    weight_four_graph,
    get_configuration,
    get_configurations,
    derive_weight_four_configuration,
    EIGHT_CYCLE_OPPOSITE_ERRORS,
    EIGHT_CYCLE_ADJACENT_ERRORS,
    WEIGHT_FOUR_ERRORS,
)
from .recipes import (
    CASCADE_PRESETS,
    QCCode,
    cascade_decoder,
    find_certified_code,
    gallager_b_decoder,
    parallel_bf_decoder,
    tbfa1_decoder,
    tbfa2_decoder,
)

__all__ = [
    # Configurations
    "eight_cycle_graph",
    "weight_four_graph",
    "get_configuration",
    "get_configurations",
    "derive_weight_four_configuration",
    "EIGHT_CYCLE_OPPOSITE_ERRORS",
    "EIGHT_CYCLE_ADJACENT_ERRORS",
    "WEIGHT_FOUR_ERRORS",

    # Recipes
    "CASCADE_PRESETS",
    "QCCode",
    "cascade_decoder",
    "find_certified_code",
    "gallager_b_decoder",
    "parallel_bf_decoder",
    "tbfa1_decoder",
    "tbfa2_decoder",
]
