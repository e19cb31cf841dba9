"""
Flip rules for the two-bit bit flipping family

A FlipRule is a total lookup table from (variable state, count tuple) to the
next variable state. Memoryless rules are indexed by the number of
unsatisfied checks n_u; rules with check memory are indexed by
(n_up, n_un, n_sp), the newly-satisfied count being implied.

Tables are numpy arrays of VarState codes so the decode engine can apply a
rule to a whole word with one fancy-indexing operation. Entries outside the
declared domain hold -1.
"""

from itertools import product
from typing import Any, Dict, Iterator, List, Optional, Tuple
import logging

import numpy as np

from ..exceptions import ArityMismatchError, RuleValidationError
from .states import STATE_ORDER, VarState

logger = logging.getLogger(__name__)

UNDEFINED = -1

_S0, _W0, _W1, _S1 = (VarState.ZERO_STRONG, VarState.ZERO_WEAK, VarState.ONE_WEAK, VarState.ONE_STRONG)

# Rows indexed by state, columns by n_u = 0..3
F1_ROWS = {
    _S0: (_S0, _S0, _W0, _S1),
    _W0: (_S0, _W1, _S1, _S1),
    _W1: (_S1, _W0, _S0, _S0),
    _S1: (_S1, _S1, _W1, _S0),
}


class FlipRule:
    """One member of the two-bit algorithm family, as an immutable lookup table"""

    __slots__ = ("name", "gamma", "uses_check_memory", "table", "symmetric_flag")

    def __init__(self, name: str, gamma: int, uses_check_memory: bool, table: np.ndarray,
                 symmetric_flag: bool = False):
        """
        Args:
            name: Rule name used in cascade specs and reports
            gamma: Left degree the rule is defined for
            uses_check_memory: True for (n_up, n_un, n_sp) rules
            table: int8 array of shape (4, gamma+1) or (4, gamma+1, gamma+1, gamma+1)
            symmetric_flag: Declared 0/1 symmetry (checked by the validator)
        """
        expected = table_shape(gamma, uses_check_memory)
        table = np.asarray(table, dtype=np.int8)
        if table.shape != expected:
            raise RuleValidationError(
                f"Rule '{name}' table has shape {table.shape}, expected {expected}")
        table = table.copy()
        table.setflags(write=False)
        self.name = name
        self.gamma = int(gamma)
        self.uses_check_memory = bool(uses_check_memory)
        self.table = table
        self.symmetric_flag = bool(symmetric_flag)

    def lookup(self, v: VarState, *counts: int) -> VarState:
        """Next state of a variable given its count tuple"""
        arity = 3 if self.uses_check_memory else 1
        if len(counts) != arity:
            raise ValueError(f"Rule '{self.name}' takes {arity} counts, got {len(counts)}")
        if sum(counts) > self.gamma or min(counts) < 0:
            raise ValueError(f"Counts {counts} outside the domain of gamma={self.gamma}")
        value = int(self.table[(int(v),) + tuple(counts)])
        if value == UNDEFINED:
            raise RuleValidationError(f"Rule '{self.name}' has no entry for {VarState(int(v))} {counts}")
        return VarState(value)

    def domain(self) -> Iterator[Tuple[VarState, Tuple[int, ...]]]:
        """Every (state, counts) pair the rule must define, in rule-text order"""
        yield from iter_domain(self.gamma, self.uses_check_memory)

    @property
    def is_zero_preserving(self) -> bool:
        return zero_preserving(self)

    def renamed(self, name: str) -> "FlipRule":
        return FlipRule(name, self.gamma, self.uses_check_memory, self.table, self.symmetric_flag)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FlipRule):
            return NotImplemented
        return (self.name == other.name and self.gamma == other.gamma
                and self.uses_check_memory == other.uses_check_memory
                and np.array_equal(self.table, other.table))

    def __hash__(self) -> int:
        return hash((self.name, self.gamma, self.uses_check_memory, self.table.tobytes()))

    def __repr__(self) -> str:
        kind = "memory" if self.uses_check_memory else "memoryless"
        return f"FlipRule({self.name!r}, gamma={self.gamma}, {kind})"


def table_shape(gamma: int, uses_check_memory: bool) -> Tuple[int, ...]:
    if uses_check_memory:
        return (4, gamma + 1, gamma + 1, gamma + 1)
    return (4, gamma + 1)


def count_tuples(gamma: int, uses_check_memory: bool) -> List[Tuple[int, ...]]:
    """Count tuples of the domain: (n_u,) or (n_up, n_un, n_sp) with sum <= gamma"""
    if not uses_check_memory:
        return [(n,) for n in range(gamma + 1)]
    return [t for t in product(range(gamma + 1), repeat=3) if sum(t) <= gamma]


def iter_domain(gamma: int, uses_check_memory: bool) -> Iterator[Tuple[VarState, Tuple[int, ...]]]:
    tuples = count_tuples(gamma, uses_check_memory)
    for state in STATE_ORDER:
        for counts in tuples:
            yield state, counts


def empty_table(gamma: int, uses_check_memory: bool) -> np.ndarray:
    return np.full(table_shape(gamma, uses_check_memory), UNDEFINED, dtype=np.int8)


def missing_entries(rule: FlipRule) -> List[Tuple[VarState, Tuple[int, ...]]]:
    return [(state, counts) for state, counts in rule.domain()
            if rule.table[(int(state),) + counts] == UNDEFINED]


def zero_preserving(rule: FlipRule) -> bool:
    """A strong zero with every check satisfied stays a strong zero"""
    s0 = int(_S0)
    if not rule.uses_check_memory:
        return int(rule.table[s0, 0]) == s0
    return all(int(rule.table[s0, 0, 0, z]) == s0 for z in range(rule.gamma + 1))


def is_symmetric(rule: FlipRule) -> bool:
    """table(swap01(v), t) == swap01(table(v, t)) on the whole domain"""
    for state, counts in rule.domain():
        out = int(rule.table[(int(state),) + counts])
        swapped = int(rule.table[(int(state) ^ 0b10,) + counts])
        if out == UNDEFINED or swapped == UNDEFINED or swapped != out ^ 0b10:
            return False
    return True


def validate_rule_table(rule: FlipRule) -> Dict[str, Any]:
    """
    Validate a rule table.

    Returns:
        Dictionary with validation results including:
        - valid: False when the table is not total
        - errors: List of error messages
        - warnings: List of warning messages
        - zero_preserving: Whether failure-lab may use the rule
        - symmetric: Whether the table is 0/1-symmetric
        - entry_count: Size of the domain
    """
    result: Dict[str, Any] = {
        'valid': True,
        'errors': [],
        'warnings': [],
        'zero_preserving': False,
        'symmetric': False,
        'entry_count': 0,
    }

    entries = list(rule.domain())
    result['entry_count'] = len(entries)

    missing = missing_entries(rule)
    for state, counts in missing[:10]:
        result['errors'].append(f"Missing entry for {state.token} {' '.join(map(str, counts))}")
    if len(missing) > 10:
        result['errors'].append(f"... and {len(missing) - 10} more missing entries")

    values = rule.table[rule.table != UNDEFINED]
    if values.size and (values.min() < 0 or values.max() > 3):
        result['errors'].append("Table contains values that are not variable states")

    if not missing:
        result['zero_preserving'] = zero_preserving(rule)
        result['symmetric'] = is_symmetric(rule)
        if not result['zero_preserving']:
            result['warnings'].append(
                f"Rule '{rule.name}' is not zero-preserving; failure-lab will refuse it")
        if rule.symmetric_flag and not result['symmetric']:
            result['errors'].append(f"Rule '{rule.name}' is declared symmetric but is not")

    result['valid'] = len(result['errors']) == 0
    return result


def check_arity(rule: FlipRule, gamma: int) -> None:
    if rule.gamma != gamma:
        raise ArityMismatchError(
            f"Rule '{rule.name}' is defined for gamma={rule.gamma}, graph has gamma={gamma}")


def memoryless_as_memory(rule: FlipRule, name: Optional[str] = None) -> FlipRule:
    """Lift a memoryless rule to the memory domain through n_u = n_up + n_un"""
    if rule.uses_check_memory:
        return rule
    table = empty_table(rule.gamma, True)
    for state, (up, un, sp) in iter_domain(rule.gamma, True):
        table[int(state), up, un, sp] = rule.table[int(state), up + un]
    return FlipRule(name or f"{rule.name}-mem", rule.gamma, True, table, rule.symmetric_flag)


def rule_from_function(name: str, gamma: int, uses_check_memory: bool, fn,
                       symmetric_flag: bool = False) -> FlipRule:
    """Materialize a rule from a Python callable fn(state, *counts) -> VarState"""
    table = empty_table(gamma, uses_check_memory)
    for state, counts in iter_domain(gamma, uses_check_memory):
        table[(int(state),) + counts] = int(fn(state, *counts))
    return FlipRule(name, gamma, uses_check_memory, table, symmetric_flag)


def f1_lookup(v: VarState, n_u: int) -> VarState:
    """Two-bit update without check memory"""
    if not 0 <= n_u <= 3:
        raise ValueError(f"n_u must be in 0..3, got {n_u}")
    return F1_ROWS[VarState(v)][n_u]


def f2_lookup(v: VarState, n_up: int, n_un: int, n_sp: int) -> VarState:
    """Two-bit update with check memory: f1 on n_up + n_un except two tuples"""
    if min(n_up, n_un, n_sp) < 0 or n_up + n_un + n_sp > 3:
        raise ValueError(f"Counts ({n_up}, {n_un}, {n_sp}) outside the gamma=3 domain")
    v = VarState(v)
    if (n_up, n_un, n_sp) == (0, 1, 2):
        return v
    if (n_up, n_un, n_sp) == (0, 1, 1):
        return VarState.weak_of(v.hard)
    return f1_lookup(v, n_up + n_un)


def _parallel_bf(state: VarState, n_u: int, gamma: int = 3) -> VarState:
    bit = state.hard
    return VarState.strong_of(bit ^ 1 if n_u > gamma - n_u else bit)


def _flip_on_all(state: VarState, n_u: int, gamma: int = 3) -> VarState:
    if n_u == gamma:
        return VarState.strong_of(state.hard ^ 1)
    return state


def _build_builtins() -> Dict[str, FlipRule]:
    return {
        'f1': rule_from_function('f1', 3, False, f1_lookup, symmetric_flag=True),
        'f2': rule_from_function('f2', 3, True, f2_lookup, symmetric_flag=True),
        'bf-parallel': rule_from_function('bf-parallel', 3, False, _parallel_bf, symmetric_flag=True),
        'bf-3only': rule_from_function('bf-3only', 3, False, _flip_on_all, symmetric_flag=True),
    }


_BUILTINS = _build_builtins()


def builtin_rule_names() -> List[str]:
    return list(_BUILTINS)


def get_builtin_rule(name: str) -> FlipRule:
    """Look up one of the shipped rules: f1, f2, bf-parallel, bf-3only"""
    try:
        return _BUILTINS[name]
    except KeyError:
        raise ValueError(f"Unknown built-in rule '{name}'. Available: {builtin_rule_names()}")


def parallel_bf_rule(gamma: int) -> FlipRule:
    """Majority bit flipping for any left degree"""
    return rule_from_function(f'bf-parallel-g{gamma}', gamma, False,
                              lambda s, n: _parallel_bf(s, n, gamma), symmetric_flag=True)


def random_rule(seed: int, gamma: int = 3, name: Optional[str] = None) -> FlipRule:
    """
    Random memoryless rule that is zero-preserving and 0/1-symmetric by construction.

    The rows of 0s and 0w are drawn uniformly (except 0s with no unsatisfied
    check, which stays 0s); the rows of 1w and 1s are their mirror images.
    """
    rng = np.random.default_rng(seed)
    table = empty_table(gamma, False)
    for state in (_S0, _W0):
        for n_u in range(gamma + 1):
            if state == _S0 and n_u == 0:
                out = int(_S0)
            else:
                out = int(rng.integers(0, 4))
            table[int(state), n_u] = out
            table[int(state) ^ 0b10, n_u] = out ^ 0b10
    return FlipRule(name or f"random-{seed}", gamma, False, table, symmetric_flag=True)
