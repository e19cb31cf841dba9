"""
Tests for Tanner graphs, QC construction and validators
"""

import numpy as np
import pytest

from twobit_ldpc.core.construction import (
    all_normalised_bases,
    build_qc_code,
    find_girth8_shifts,
    is_automorphism,
    qc_shift_permutation,
)
from twobit_ldpc.core.graph import INFINITE_GIRTH, TannerGraph, girth, min_codeword_weight, rank_gf2, syndrome
from twobit_ldpc.core.states import Assignment
from twobit_ldpc.core.validators import validate_base_matrix, validate_error_pattern, validate_graph
from twobit_ldpc.exceptions import BaseMatrixError, GraphConstructionError, SearchExhaustedError

from .conftest import ARRAY_BASE


class TestTannerGraph:
    """Test graph construction and measurements"""

    def test_dimensions(self, eight_cycle):
        """Test n, m, gamma and check adjacency"""
        assert (eight_cycle.n, eight_cycle.m, eight_cycle.gamma) == (4, 8, 3)
        assert eight_cycle.check_adj[0] == (0, 1)
        assert eight_cycle.check_adj[4] == (0,)
        assert eight_cycle.degree_profile() == {1: 4, 2: 4}
        assert eight_cycle.edge_count == 12

    def test_parity_check_round_trip(self, eight_cycle):
        """Test conversion to a dense H and back"""
        H = eight_cycle.to_parity_check()
        assert H.shape == (8, 4)
        assert int(H.sum()) == 12
        assert TannerGraph.from_parity_check(H) == eight_cycle

    def test_from_check_adj(self, eight_cycle):
        """Test building from per-check lists"""
        rebuilt = TannerGraph.from_check_adj(eight_cycle.check_adj, n=4)
        assert rebuilt.var_adj == eight_cycle.var_adj

    def test_rejects_irregular_left_degree(self):
        """Test a variable with the wrong degree"""
        with pytest.raises(GraphConstructionError):
            TannerGraph([[0, 1, 2], [0, 1]])

    def test_rejects_repeated_edge(self):
        """Test a repeated check in one variable's list"""
        with pytest.raises(GraphConstructionError):
            TannerGraph([[0, 0, 1]])

    def test_rejects_out_of_range_check(self):
        """Test a check index beyond m"""
        with pytest.raises(GraphConstructionError):
            TannerGraph([[0, 1, 5]], m=3)

    def test_induced(self, eight_cycle):
        """Test the subgraph induced by two neighbouring variables"""
        sub, var_map, check_map = eight_cycle.induced([1, 0])
        assert var_map == [0, 1]
        assert check_map == [0, 1, 3, 4, 5]
        assert sub.var_adj == ((0, 2, 3), (0, 1, 4))

    def test_syndrome(self, eight_cycle):
        """Test the unsatisfied checks of two opposite errors"""
        s = syndrome(eight_cycle, [1, 0, 1, 0])
        assert s.unsatisfied() == [0, 1, 2, 3, 4, 6]
        assert s.weight() == 6
        assert not s.all_satisfied
        assert syndrome(eight_cycle, Assignment.from_hard([0, 0, 0, 0])).all_satisfied

    def test_to_networkx(self, eight_cycle):
        """Test the bipartite networkx view"""
        graph = eight_cycle.to_networkx()
        assert graph.number_of_nodes() == 12
        assert graph.number_of_edges() == 12
        assert graph.nodes[("c", 0)]["kind"] == "chk"
        assert set(graph[("v", 0)]) == {("c", 0), ("c", 3), ("c", 4)}

    def test_single_flip_toggles_gamma_checks(self, array_code):
        """Test flipping one bit changes exactly the checks of that variable"""
        rng = np.random.default_rng(3)
        for _ in range(20):
            word = rng.integers(0, 2, array_code.n)
            v = int(rng.integers(array_code.n))
            flipped = word.copy()
            flipped[v] ^= 1
            changed = syndrome(array_code, word).sat != syndrome(array_code, flipped).sat
            assert int(changed.sum()) == array_code.gamma
            assert sorted(np.flatnonzero(changed).tolist()) == sorted(array_code.var_adj[v])

    def test_syndrome_length_mismatch(self, eight_cycle):
        """Test a word of the wrong length"""
        with pytest.raises(ValueError):
            syndrome(eight_cycle, [0, 1])


class TestGirthAndWeight:
    """Test girth, rank and minimum codeword weight"""

    def test_girth_of_fixtures(self, eight_cycle, weight_four, cycle_only):
        """Test the shipped configurations have girth 8"""
        assert girth(eight_cycle) == 8
        assert girth(weight_four) == 8
        assert girth(cycle_only) == 8

    def test_girth_of_array_code(self, array_code):
        """Test the array code has six-cycles and no four-cycles"""
        assert girth(array_code) == 6

    def test_girth_of_tree(self):
        """Test a single variable is a forest"""
        assert girth(TannerGraph([[0, 1, 2]])) == INFINITE_GIRTH

    def test_girth_four(self):
        """Test two variables sharing two checks"""
        assert girth(TannerGraph([[0, 1, 2], [0, 1, 3]])) == 4

    def test_rank_gf2(self):
        """Test rank over GF(2) of a dependent matrix"""
        assert rank_gf2(np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]])) == 2
        assert rank_gf2(np.eye(3, dtype=int)) == 3

    def test_rate(self, cycle_only):
        """Test true rate of the plain cycle (one redundant check)"""
        assert cycle_only.rate == pytest.approx(0.25)
        assert cycle_only.design_rate == pytest.approx(0.0)

    def test_min_codeword_weight(self, cycle_only, eight_cycle):
        """Test the lightest codeword search"""
        assert min_codeword_weight(cycle_only, 4) == 4
        assert min_codeword_weight(cycle_only, 3) is None
        assert min_codeword_weight(eight_cycle, 4) is None

    def test_array_code_has_no_light_codewords(self, array_code):
        """Test girth 6 with gamma 3 rules out weights below four"""
        assert min_codeword_weight(array_code, 3) is None


class TestQCConstruction:
    """Test base-matrix expansion and shift search"""

    def test_array_code_expansion(self, array_code):
        """Test dimensions and the circulant edge rule"""
        assert (array_code.n, array_code.m, array_code.gamma) == (25, 15, 3)
        assert array_code.var_adj[0] == (0, 5, 10)
        assert array_code.var_adj[6] == (1, 7, 13)
        assert array_code.degree_profile() == {5: 15}

    def test_shift_is_automorphism(self, array_code):
        """Test cyclic shifts inside every block map the code onto itself"""
        var_perm, check_perm = qc_shift_permutation(5, 5, shift=2, rows=3)
        assert is_automorphism(array_code, var_perm, check_perm)

    def test_shift_out_of_range(self):
        """Test a shift not smaller than p"""
        with pytest.raises(BaseMatrixError):
            build_qc_code([[0, 5], [0, 1], [0, 2]], 5)

    def test_non_uniform_columns(self):
        """Test an empty cell that breaks left-regularity"""
        with pytest.raises(BaseMatrixError):
            build_qc_code([[0, -1], [0, 0], [0, 0]], 5)

    def test_repeated_shift_in_cell(self):
        """Test a superposed cell with a repeated shift"""
        with pytest.raises(BaseMatrixError):
            build_qc_code([[(1, 1)], [0]], 5)

    def test_superposed_cell(self):
        """Test a cell holding two circulants"""
        g = build_qc_code([[(0, 1)], [0]], 4)
        assert g.gamma == 3
        assert g.var_adj[0] == (0, 1, 4)

    def test_find_girth8_shifts(self):
        """Test a 3 x 4 search at p = 17 reaches girth 8"""
        base = find_girth8_shifts(3, 4, 17, seed=0)
        assert len(base) == 3 and all(len(row) == 4 for row in base)
        assert base[0] == [0, 0, 0, 0]
        assert all(row[0] == 0 for row in base)
        g = build_qc_code(base, 17)
        assert g.n == 68
        assert girth(g) >= 8

    def test_find_girth8_shifts_deterministic(self):
        """Test the same seed gives the same base"""
        assert find_girth8_shifts(3, 4, 17, seed=3) == find_girth8_shifts(3, 4, 17, seed=3)

    def test_infeasible_search(self):
        """Test a circulant too small for girth 8"""
        with pytest.raises(SearchExhaustedError):
            find_girth8_shifts(3, 4, 2)

    def test_small_circulant_has_four_cycles(self):
        """Test every normalised 3 x 4 base at p = 2 falls short of girth 8"""
        bases = list(all_normalised_bases(3, 4, 2))
        assert len(bases) == 2 ** 6
        assert all(base[0] == [0, 0, 0, 0] for base in bases)
        assert all(girth(build_qc_code(base, 2)) == 4 for base in bases)

    def test_bad_target_girth(self):
        """Test only girth 6 and 8 can be targeted"""
        with pytest.raises(ValueError):
            find_girth8_shifts(3, 4, 17, target_girth=10)


class TestValidators:
    """Test the validation dictionaries"""

    def test_validate_graph(self, eight_cycle, array_code):
        """Test girth requirements"""
        result = validate_graph(eight_cycle, girth_min=8, gamma=3)
        assert result['valid']
        assert result['girth'] == 8
        bad = validate_graph(array_code, girth_min=8)
        assert not bad['valid']
        assert bad['girth'] == 6

    def test_validate_graph_gamma(self, cycle_only):
        """Test a left degree mismatch"""
        assert not validate_graph(cycle_only, gamma=3)['valid']

    def test_validate_base_matrix(self):
        """Test good and bad base matrices"""
        assert validate_base_matrix(ARRAY_BASE, 5)['valid']
        assert validate_base_matrix(ARRAY_BASE, 5)['column_weights'] == [3] * 5
        assert not validate_base_matrix([[0, 7]], 5)['valid']
        assert not validate_base_matrix([[0, 1], [0]], 5)['valid']
        assert validate_base_matrix([[0, 0], [0, 1]], 5)['warnings']

    def test_validate_error_pattern(self):
        """Test out-of-range and repeated indices"""
        assert validate_error_pattern([0, 3], 4)['valid']
        assert not validate_error_pattern([0, 4], 4)['valid']
        repeated = validate_error_pattern([1, 1], 4)
        assert repeated['valid']
        assert repeated['weight'] == 1
        assert repeated['warnings']
