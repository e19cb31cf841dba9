"""
Tests for variable states and flip rules
"""

import numpy as np
import pytest

from twobit_ldpc.core.rules import (
    FlipRule,
    builtin_rule_names,
    count_tuples,
    empty_table,
    f1_lookup,
    f2_lookup,
    get_builtin_rule,
    is_symmetric,
    memoryless_as_memory,
    parallel_bf_rule,
    random_rule,
    validate_rule_table,
    zero_preserving,
)
from twobit_ldpc.core.states import Assignment, CheckState, VarState, classify_check, classify_checks
from twobit_ldpc.exceptions import RuleValidationError

S0, W0, W1, S1 = VarState.ZERO_STRONG, VarState.ZERO_WEAK, VarState.ONE_WEAK, VarState.ONE_STRONG


class TestVarState:
    """Test the four-valued variable alphabet"""

    def test_hard_and_strength(self):
        """Test hard decision and strength bit of every state"""
        assert [s.hard for s in (S0, W0, W1, S1)] == [0, 0, 1, 1]
        assert [s.strong for s in (S0, W0, W1, S1)] == [True, False, False, True]

    def test_swap01(self):
        """Test exchanging zero and one keeps the strength"""
        assert S0.swap01() == S1
        assert W0.swap01() == W1
        assert W1.swap01() == W0

    def test_tokens(self):
        """Test token round trip and unknown tokens"""
        for state in VarState:
            assert VarState.from_token(state.token) == state
        assert VarState.from_token(" 1W ") == W1
        with pytest.raises(ValueError):
            VarState.from_token("2s")

    def test_assignment_from_hard(self):
        """Test channel initialisation makes every variable strong"""
        a = Assignment.from_hard([0, 1, 1, 0])
        assert a.tokens() == ["0s", "1s", "1s", "0s"]
        assert a.hard().tolist() == [0, 1, 1, 0]
        assert a.swap01() == Assignment.from_hard([1, 0, 0, 1])


class TestCheckClassification:
    """Test check states against the previous iteration"""

    def test_classify_check(self):
        """Test the four combinations"""
        assert classify_check(True, True) == CheckState.PREV_SAT
        assert classify_check(False, True) == CheckState.NEWLY_SAT
        assert classify_check(False, False) == CheckState.PREV_UNSAT
        assert classify_check(True, False) == CheckState.NEWLY_UNSAT

    def test_vectorized_matches_scalar(self):
        """Test classify_checks agrees with classify_check"""
        before = np.array([True, False, False, True])
        now = np.array([True, True, False, False])
        codes = classify_checks(before, now)
        assert [CheckState(int(c)) for c in codes] == [
            classify_check(b, n) for b, n in zip(before, now)]

    def test_satisfied_property(self):
        """Test which check states count as satisfied"""
        assert CheckState.PREV_SAT.satisfied
        assert CheckState.NEWLY_SAT.satisfied
        assert not CheckState.PREV_UNSAT.satisfied
        assert not CheckState.NEWLY_UNSAT.satisfied


class TestBuiltinRules:
    """Test the shipped rule tables"""

    def test_builtin_names(self):
        """Test every shipped rule is registered"""
        assert set(builtin_rule_names()) == {'f1', 'f2', 'bf-parallel', 'bf-3only'}
        with pytest.raises(ValueError):
            get_builtin_rule('f3')

    def test_f1_table(self):
        """Test all sixteen entries of f1"""
        expected = {
            S0: (S0, S0, W0, S1),
            W0: (S0, W1, S1, S1),
            W1: (S1, W0, S0, S0),
            S1: (S1, S1, W1, S0),
        }
        for state, row in expected.items():
            for n_u, out in enumerate(row):
                assert f1_lookup(state, n_u) == out
                assert get_builtin_rule('f1').lookup(state, n_u) == out

    def test_f2_exceptions(self):
        """Test the two tuples where f2 departs from f1"""
        for state in VarState:
            assert f2_lookup(state, 0, 1, 2) == state
            assert f2_lookup(state, 0, 1, 1) == VarState.weak_of(state.hard)

    def test_f2_follows_f1_elsewhere(self):
        """Test f2 equals f1 on n_up + n_un outside the exceptions"""
        f2 = get_builtin_rule('f2')
        for state, (up, un, sp) in f2.domain():
            if (up, un, sp) in ((0, 1, 2), (0, 1, 1)):
                continue
            assert f2.lookup(state, up, un, sp) == f1_lookup(state, up + un)

    def test_f2_domain_size(self):
        """Test the memory domain has 20 count tuples per state"""
        assert len(count_tuples(3, True)) == 20
        assert validate_rule_table(get_builtin_rule('f2'))['entry_count'] == 80

    def test_parallel_bf_rule(self):
        """Test bf-parallel flips on a majority and always ends strong"""
        rule = get_builtin_rule('bf-parallel')
        assert rule.lookup(S0, 1) == S0
        assert rule.lookup(S0, 2) == S1
        assert rule.lookup(S1, 3) == S0
        assert rule.lookup(W1, 0) == S1

    def test_flip_on_all_rule(self):
        """Test bf-3only flips only when every check is unsatisfied"""
        rule = get_builtin_rule('bf-3only')
        assert rule.lookup(S1, 2) == S1
        assert rule.lookup(S1, 3) == S0
        assert rule.lookup(S0, 3) == S1

    def test_lookup_rejects_bad_counts(self):
        """Test arity and domain checks in lookup"""
        rule = get_builtin_rule('f1')
        with pytest.raises(ValueError):
            rule.lookup(S0, 1, 0, 0)
        with pytest.raises(ValueError):
            rule.lookup(S0, 4)
        with pytest.raises(ValueError):
            f2_lookup(S0, 2, 1, 1)


class TestRuleValidation:
    """Test validate_rule_table and related predicates"""

    @pytest.mark.parametrize("name", ['f1', 'f2', 'bf-parallel', 'bf-3only'])
    def test_builtins_valid(self, name):
        """Test every shipped rule is total, zero-preserving and symmetric"""
        result = validate_rule_table(get_builtin_rule(name))
        assert result['valid']
        assert result['zero_preserving']
        assert result['symmetric']
        assert result['errors'] == []

    def test_partial_table(self):
        """Test missing entries are reported"""
        table = empty_table(3, False)
        table[int(S0), 0] = int(S0)
        result = validate_rule_table(FlipRule('partial', 3, False, table))
        assert not result['valid']
        assert any('Missing entry' in error for error in result['errors'])

    def test_not_zero_preserving(self):
        """Test a rule that corrupts an all-satisfied strong zero"""
        table = np.array(get_builtin_rule('f1').table)
        table[int(S0), 0] = int(W0)
        rule = FlipRule('drifting', 3, False, table)
        result = validate_rule_table(rule)
        assert result['valid']
        assert not result['zero_preserving']
        assert not rule.is_zero_preserving
        assert result['warnings']

    def test_false_symmetry_claim(self):
        """Test a declared-symmetric rule that is not symmetric is invalid"""
        table = np.array(get_builtin_rule('f1').table)
        table[int(S1), 2] = int(S1)
        rule = FlipRule('lopsided', 3, False, table, symmetric_flag=True)
        assert not is_symmetric(rule)
        assert not validate_rule_table(rule)['valid']

    def test_wrong_table_shape(self):
        """Test the constructor rejects a table of the wrong shape"""
        with pytest.raises(RuleValidationError):
            FlipRule('bad', 3, True, np.zeros((4, 4), dtype=np.int8))

    def test_tables_are_read_only(self):
        """Test a rule's table cannot be mutated"""
        rule = get_builtin_rule('f1')
        with pytest.raises(ValueError):
            rule.table[0, 0] = 3


class TestDerivedRules:
    """Test random rules and lifting"""

    @pytest.mark.parametrize("seed", [0, 1, 7, 42])
    def test_random_rule_properties(self, seed):
        """Test random rules are total, zero-preserving and symmetric"""
        rule = random_rule(seed)
        result = validate_rule_table(rule)
        assert result['valid']
        assert zero_preserving(rule)
        assert is_symmetric(rule)

    def test_random_rule_deterministic(self):
        """Test the same seed gives the same table"""
        assert np.array_equal(random_rule(3).table, random_rule(3).table)

    def test_memoryless_as_memory(self):
        """Test the lifted f1 depends only on n_up + n_un"""
        f1 = get_builtin_rule('f1')
        lifted = memoryless_as_memory(f1)
        assert lifted.uses_check_memory
        for state, (up, un, sp) in lifted.domain():
            assert lifted.lookup(state, up, un, sp) == f1.lookup(state, up + un)
        assert memoryless_as_memory(lifted) is lifted

    def test_parallel_bf_for_other_degrees(self):
        """Test majority flipping built for gamma 3 and 4"""
        assert np.array_equal(parallel_bf_rule(3).table, get_builtin_rule('bf-parallel').table)
        rule = parallel_bf_rule(4)
        assert rule.gamma == 4
        assert rule.lookup(S0, 3) == S1
        assert rule.lookup(S0, 2) == S0
        assert rule.lookup(W1, 4) == S0

    def test_renamed(self):
        """Test renaming keeps the table"""
        renamed = get_builtin_rule('f2').renamed('tbfa2')
        assert renamed.name == 'tbfa2'
        assert np.array_equal(renamed.table, get_builtin_rule('f2').table)
        assert renamed != get_builtin_rule('f2')
