"""
Tests for canonical keys, failure graph enumeration and convergence certificates
"""

import numpy as np
import pytest

from twobit_ldpc.analysis.canonical import canonical_key, colored_networkx, is_isomorphic_colored
from twobit_ldpc.analysis.certify import certify_convergence, embed_in_code, variable_ball
from twobit_ldpc.analysis.failures import (
    Atlas,
    FailureGraph,
    atlas_from_result,
    contains,
    enumerate_atlas,
    enumerate_failures,
    reduce_minimal,
    simulate_on_subgraph,
)
from twobit_ldpc.analysis.subgraphs import (
    add_variable,
    attachment_closes_short_cycle,
    attachments,
    check_distances,
    enumerate_initial_subgraphs,
)
from twobit_ldpc.core.construction import build_qc_code
from twobit_ldpc.core.graph import TannerGraph
from twobit_ldpc.core.rules import get_builtin_rule, rule_from_function
from twobit_ldpc.core.states import VarState
from twobit_ldpc.examples.configurations import (
    EIGHT_CYCLE_ADJACENT_ERRORS,
    EIGHT_CYCLE_OPPOSITE_ERRORS,
    WEIGHT_FOUR_ERRORS,
    derive_weight_four_configuration,
    eight_cycle_graph,
    get_configuration,
    matches_fixed_point_narration,
)
from twobit_ldpc.examples.recipes import QCCode, cascade_decoder, tbfa2_decoder
from twobit_ldpc.exceptions import RuleValidationError

from .conftest import ARRAY_BASE

# Eight-cycle with variables and checks renumbered.
RELABELED_EIGHT_CYCLE = TannerGraph([[1, 2, 6], [0, 1, 5], [2, 3, 7], [0, 3, 4]], m=8)


@pytest.fixture
def bf_rule():
    return get_builtin_rule('bf-parallel')


@pytest.fixture
def opposite_member(eight_cycle, bf_rule):
    outcome = simulate_on_subgraph(eight_cycle, EIGHT_CYCLE_OPPOSITE_ERRORS, bf_rule, 10)
    return FailureGraph(eight_cycle, EIGHT_CYCLE_OPPOSITE_ERRORS, outcome.witness, 10, bf_rule.name)


@pytest.fixture
def bf_atlas(opposite_member):
    return Atlas([opposite_member], 'bf-parallel', k=2, l=10, n_max=4, girth_min=8,
                 covered_n=4, complete=True)


class TestCanonicalKey:
    """Test canonical labeling of marked subgraphs"""

    def test_relabeling_invariance(self, eight_cycle):
        """Test renumbered variables and checks give the same key"""
        assert canonical_key(eight_cycle, (0, 2)) == canonical_key(RELABELED_EIGHT_CYCLE, (0, 3))
        assert canonical_key(eight_cycle, (0, 1)) == canonical_key(RELABELED_EIGHT_CYCLE, (1, 3))

    def test_error_marking_matters(self, eight_cycle):
        """Test opposite and adjacent errors are told apart"""
        assert canonical_key(eight_cycle, (0, 2)) != canonical_key(eight_cycle, (0, 1))
        assert canonical_key(eight_cycle, (0, 2)) != canonical_key(eight_cycle)

    def test_agrees_with_networkx(self, eight_cycle):
        """Test key equality matches brute-force colored isomorphism"""
        for a_errors, b_errors in [((0, 2), (0, 3)), ((0, 2), (1, 3)), ((0, 1), (1, 3))]:
            same_key = canonical_key(eight_cycle, a_errors) == canonical_key(RELABELED_EIGHT_CYCLE, b_errors)
            assert same_key == is_isomorphic_colored(eight_cycle, a_errors, RELABELED_EIGHT_CYCLE, b_errors)

    def test_key_prefix(self, weight_four):
        """Test the key carries the left degree"""
        assert canonical_key(weight_four, WEIGHT_FOUR_ERRORS).startswith("g3:")

    def test_colored_networkx(self, eight_cycle):
        """Test node colors and edge count of the full graph"""
        graph = colored_networkx(eight_cycle, (0, 2))
        assert graph.number_of_nodes() == 12
        assert graph.number_of_edges() == 12
        assert graph.nodes[("v", 2)]["color"] == "err"
        assert graph.nodes[("v", 1)]["color"] == "var"
        assert graph.nodes[("c", 7)]["color"] == "chk"


class TestSubgraphs:
    """Test subgraph growth helpers"""

    @pytest.mark.parametrize("k,girth_min,expected", [(1, 8, 1), (2, 8, 2), (2, 4, 4), (3, 8, 4)])
    def test_initial_subgraph_counts(self, k, girth_min, expected):
        """Test the number of non-isomorphic error subgraphs"""
        graphs = enumerate_initial_subgraphs(k, girth_min=girth_min)
        assert len(graphs) == expected
        assert all(g.n == k for g in graphs)

    def test_initial_subgraphs_rejects_zero(self):
        """Test k must be positive"""
        with pytest.raises(ValueError):
            enumerate_initial_subgraphs(0)

    def test_check_distances(self, eight_cycle):
        """Test distances around the cycle and through leaves"""
        dist = check_distances(eight_cycle)
        assert dist[0, 1] == 2
        assert dist[0, 2] == 4
        assert dist[0, 4] == 2
        assert dist[4, 6] == 6
        assert np.array_equal(dist, dist.T)

    def test_disconnected_distance(self):
        """Test checks of two separate variables"""
        dist = check_distances(TannerGraph([[0, 1, 2], [3, 4, 5]]))
        assert dist[0, 3] == -1

    def test_short_cycle_detection(self, eight_cycle):
        """Test joins that would close a six-cycle"""
        dist = check_distances(eight_cycle)
        assert attachment_closes_short_cycle(dist, [0, 2], 8)
        assert not attachment_closes_short_cycle(dist, [4, 6], 8)
        assert not attachment_closes_short_cycle(dist, [0, 2], 6)

    def test_add_variable(self, eight_cycle):
        """Test a new variable gets fresh leaf checks"""
        g = add_variable(eight_cycle, [4, 6])
        assert (g.n, g.m) == (5, 9)
        assert g.var_adj[4] == (4, 6, 8)

    def test_attachments_respect_girth(self):
        """Test a single variable only accepts joins to one of its checks"""
        single = TannerGraph([[0, 1, 2]])
        joins = list(attachments(single, 8))
        assert joins == [(), (0,), (1,), (2,)]


class TestFailureGraphs:
    """Test subgraph simulation and the failure enumeration"""

    def test_rejects_non_zero_preserving(self, eight_cycle):
        """Test a rule that corrupts correct variables"""
        noisy = rule_from_function('noisy', 3, False, lambda state, n_u: VarState.ONE_STRONG)
        with pytest.raises(RuleValidationError):
            simulate_on_subgraph(eight_cycle, (0, 2), noisy, 5)
        with pytest.raises(RuleValidationError):
            enumerate_failures(noisy, k=1, l=5, n_max=3)

    def test_simulate_on_subgraph(self, eight_cycle, f1, bf_rule):
        """Test convergence and failure on the eight-cycle"""
        failed = simulate_on_subgraph(eight_cycle, EIGHT_CYCLE_OPPOSITE_ERRORS, bf_rule, 10)
        assert not failed.converged
        assert failed.iterations_used == 10
        assert failed.witness[0].corrupt() == [0, 2]
        fixed = simulate_on_subgraph(eight_cycle, EIGHT_CYCLE_ADJACENT_ERRORS, f1, 15)
        assert fixed.converged
        assert fixed.iterations_used == 2

    def test_failure_graph_properties(self, weight_four, f1):
        """Test the weight-four fixed point"""
        outcome = simulate_on_subgraph(weight_four, WEIGHT_FOUR_ERRORS, f1, 15)
        member = FailureGraph(weight_four, (5, 3, 2, 0), outcome.witness, 15, 'f1')
        assert member.initial_errors == WEIGHT_FOUR_ERRORS
        assert member.k == 4
        assert (member.var_count, member.check_count) == (7, 12)
        assert member.final_corrupt() == [1, 2, 3, 4, 6]
        assert len(member.digest) == 16
        assert matches_fixed_point_narration(weight_four, outcome.witness)

    def test_single_error_never_fails(self, f1):
        """Test f1 corrects every single error on girth-8 subgraphs"""
        result = enumerate_failures(f1, k=1, l=15, n_max=3)
        assert result.candidates == []
        assert result.complete
        assert not result.budget_exhausted
        assert result.stats["simulated"] == 1

    def test_argument_checks(self, f1):
        """Test size and iteration bounds"""
        with pytest.raises(ValueError):
            enumerate_failures(f1, k=2, l=5, n_max=1)
        with pytest.raises(ValueError):
            enumerate_failures(f1, k=1, l=0, n_max=3)

    def test_parallel_bf_finds_eight_cycle(self, bf_rule):
        """Test the oscillating eight-cycle is enumerated"""
        result = enumerate_failures(bf_rule, k=2, l=10, n_max=4)
        keys = [candidate.key for candidate in result.candidates]
        assert canonical_key(eight_cycle_graph(), EIGHT_CYCLE_OPPOSITE_ERRORS) in keys
        assert result.complete
        assert all(not simulate_on_subgraph(c.graph, c.initial_errors, bf_rule, 10).converged
                   for c in result.candidates)

    def test_node_budget(self, bf_rule):
        """Test a tiny budget gives a partial result"""
        result = enumerate_failures(bf_rule, k=2, l=10, n_max=4, max_nodes=2)
        assert result.budget_exhausted
        assert not result.complete

    def test_contains_and_minimality(self, eight_cycle, opposite_member, bf_rule):
        """Test a graph holding the eight-cycle is not minimal"""
        grown = add_variable(eight_cycle, [4])
        outcome = simulate_on_subgraph(grown, EIGHT_CYCLE_OPPOSITE_ERRORS, bf_rule, 10)
        big = FailureGraph(grown, EIGHT_CYCLE_OPPOSITE_ERRORS, outcome.witness, 10, bf_rule.name)
        assert contains(big, opposite_member)
        assert not contains(opposite_member, big)
        assert reduce_minimal([big, opposite_member]) == [opposite_member]
        assert len(reduce_minimal([opposite_member, opposite_member])) == 1

    def test_atlas_from_result(self, bf_rule):
        """Test a complete run covers the full size bound"""
        result = enumerate_failures(bf_rule, k=2, l=10, n_max=4)
        atlas = atlas_from_result(result, bf_rule, k=2, l=10, n_max=4)
        assert atlas.complete
        assert atlas.covered_n == 4
        assert len(atlas) <= len(result.candidates)

    def test_enumerate_atlas(self, bf_rule):
        """Test iterative deepening keeps the eight-cycle as a minimal member"""
        atlas = enumerate_atlas(bf_rule, k=2, l=10, n_max=4)
        assert atlas.complete
        assert atlas.covered_n == 4
        assert canonical_key(eight_cycle_graph(), EIGHT_CYCLE_OPPOSITE_ERRORS) in [m.key for m in atlas.members]
        assert sum(atlas.size_histogram().values()) == len(atlas)

    def test_enumerate_atlas_budget(self, bf_rule):
        """Test an exhausted budget keeps the last covered bound"""
        atlas = enumerate_atlas(bf_rule, k=2, l=10, n_max=4, max_nodes=1)
        assert not atlas.complete
        assert atlas.covered_n < 4

    @pytest.mark.slow
    def test_weight_four_is_enumerated(self, weight_four, f1):
        """Test f1 with four errors finds the shipped fixed point"""
        key = canonical_key(weight_four, WEIGHT_FOUR_ERRORS)
        result = enumerate_failures(f1, k=4, l=15, n_max=7)
        assert key in [candidate.key for candidate in result.candidates]
        minimal = reduce_minimal(result.candidates)
        assert key not in [member.key for member in minimal]

    @pytest.mark.slow
    def test_derive_weight_four_configuration(self, weight_four):
        """Test the configuration is recovered from the enumeration"""
        found = derive_weight_four_configuration()
        assert len(found) == 1
        assert canonical_key(found[0], range(4)) == canonical_key(weight_four, WEIGHT_FOUR_ERRORS)
        f2 = get_builtin_rule('f2')
        outcome = simulate_on_subgraph(found[0], range(4), f2, 15)
        assert outcome.converged
        assert outcome.iterations_used == 7


class TestCertification:
    """Test convergence certificates"""

    def test_variable_ball(self, eight_cycle):
        """Test variable-to-variable hops"""
        assert variable_ball(eight_cycle, [0], 0) == [0]
        assert variable_ball(eight_cycle, [0], 1) == [0, 1, 3]
        assert variable_ball(eight_cycle, [0], 2) == [0, 1, 2, 3]

    def test_embedding_makes_unknown(self, eight_cycle, bf_atlas, opposite_member):
        """Test opposite errors embed the atlas member"""
        result = certify_convergence(eight_cycle, [2, 0], bf_atlas)
        assert result.status == 'unknown'
        assert not result.certified
        assert result.member_key == opposite_member.key
        assert result.errors == [0, 2]
        assert {result.embedding[v] for v in opposite_member.initial_errors} == {0, 2}

    def test_certified(self, eight_cycle, bf_atlas):
        """Test adjacent errors do not embed the member"""
        result = certify_convergence(eight_cycle, [0, 1], bf_atlas)
        assert result.certified
        assert result.members_checked == 1
        assert result.embedding is None

    def test_no_member_with_matching_k(self, eight_cycle, bf_atlas):
        """Test a support of another size is certified with a caveat"""
        result = certify_convergence(eight_cycle, [0], bf_atlas)
        assert result.certified
        assert any("initial errors" in caveat for caveat in result.caveats)

    def test_out_of_range_errors(self, eight_cycle, bf_atlas):
        """Test error indices beyond n"""
        with pytest.raises(ValueError):
            certify_convergence(eight_cycle, [0, 9], bf_atlas)

    def test_iteration_mismatch(self, eight_cycle, bf_atlas):
        """Test a certificate for another iteration count"""
        with pytest.raises(ValueError):
            certify_convergence(eight_cycle, [0, 1], bf_atlas, l=5)

    def test_empty_atlas(self, eight_cycle):
        """Test an empty atlas certifies with a caveat"""
        empty = Atlas([], 'f1', k=2, l=15, n_max=5, girth_min=8, covered_n=5, complete=True)
        result = certify_convergence(eight_cycle, [0, 2], empty)
        assert result.certified
        assert result.caveats

    def test_incomplete_atlas(self, eight_cycle, opposite_member):
        """Test a partial atlas is trusted only on request"""
        partial = Atlas([opposite_member], 'bf-parallel', k=2, l=10, n_max=6, girth_min=8,
                        covered_n=4, complete=False)
        assert certify_convergence(eight_cycle, [0, 1], partial).status == 'unknown'
        trusted = certify_convergence(eight_cycle, [0, 1], partial, trust_partial=True)
        assert trusted.certified
        assert any("partial" in caveat for caveat in trusted.caveats)
        assert certify_convergence(eight_cycle, [0, 2], partial, trust_partial=True).status == 'unknown'

    def test_embed_in_code(self, weight_four, opposite_member):
        """Test the eight-cycle sits inside the weight-four configuration"""
        mapping = embed_in_code(opposite_member, weight_four)
        assert mapping is not None
        assert sorted(mapping) == [0, 1, 2, 3]
        for a, b in [(0, 1), (1, 2), (2, 3), (3, 0)]:
            assert set(weight_four.var_adj[mapping[a]]) & set(weight_four.var_adj[mapping[b]])

    def test_embed_larger_graph(self, eight_cycle, weight_four):
        """Test a seven-variable graph does not fit in four variables"""
        member = FailureGraph(weight_four, WEIGHT_FOUR_ERRORS, [], 15, 'f1')
        assert embed_in_code(member, eight_cycle) is None


class TestRecipes:
    """Test presets and shipped configurations"""

    def test_cascade_preset(self, weight_four):
        """Test the f1-f2 cascade rescues the weight-four configuration"""
        decoder = cascade_decoder('f1-f2')
        assert decoder.member_count == 2
        assert decoder.max_iterations == 60
        word = np.zeros(weight_four.n, dtype=np.int8)
        word[list(WEIGHT_FOUR_ERRORS)] = 1
        result = decoder(weight_four, word)
        assert result.converged
        assert result.algorithm_index == 1
        assert result.iterations_used == 37

    def test_unknown_preset(self):
        """Test an unknown preset name"""
        with pytest.raises(ValueError):
            cascade_decoder('f3-f4')

    def test_tbfa2_decoder(self, weight_four):
        """Test f2 alone corrects the weight-four configuration"""
        word = np.zeros(weight_four.n, dtype=np.int8)
        word[list(WEIGHT_FOUR_ERRORS)] = 1
        result = tbfa2_decoder()(weight_four, word)
        assert result.converged
        assert result.iterations_used == 7

    def test_qc_code(self):
        """Test the QC code record"""
        code = QCCode(build_qc_code(ARRAY_BASE, 5), ARRAY_BASE, 5)
        assert code.n == 25

    def test_get_configuration(self, eight_cycle):
        """Test lookup of shipped configurations"""
        graph, errors = get_configuration('eight-cycle')
        assert graph == eight_cycle
        assert errors == EIGHT_CYCLE_OPPOSITE_ERRORS
        with pytest.raises(ValueError):
            get_configuration('nine-cycle')
