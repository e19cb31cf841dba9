"""
Shared fixtures
"""

import pytest

from twobit_ldpc.core.construction import build_qc_code
from twobit_ldpc.core.graph import TannerGraph
from twobit_ldpc.core.rules import get_builtin_rule
from twobit_ldpc.examples.configurations import eight_cycle_graph, weight_four_graph

# 3 x 5 array code base with p = 5: no four-cycles, girth 6
ARRAY_BASE = [
    [0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4],
    [0, 2, 4, 1, 3],
]


@pytest.fixture
def eight_cycle() -> TannerGraph:
    return eight_cycle_graph()


@pytest.fixture
def weight_four() -> TannerGraph:
    return weight_four_graph()


@pytest.fixture
def array_code() -> TannerGraph:
    return build_qc_code(ARRAY_BASE, 5)


@pytest.fixture
def cycle_only() -> TannerGraph:
    """Plain eight-cycle with left degree 2; its only nonzero codeword is all ones"""
    return TannerGraph([[0, 3], [0, 1], [1, 2], [2, 3]], m=4)


@pytest.fixture
def f1():
    return get_builtin_rule('f1')


@pytest.fixture
def f2():
    return get_builtin_rule('f2')
