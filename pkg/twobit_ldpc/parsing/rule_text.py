"""
Rule text parser for twobit-ldpc

Line-oriented format, one mapping per line:

    rule <name> gamma=<g> memory=<0|1> [symmetric=<0|1>]
    <state> <counts...> -> <state>

Memoryless rules list one count (n_u), memory rules three (n_up n_un n_sp).
Blank lines and ``#`` comments are ignored.
"""

from typing import Any, Dict, Optional
import logging
import re

from ..core.rules import (
    FlipRule,
    UNDEFINED,
    check_arity,
    empty_table,
    validate_rule_table,
)
from ..core.states import VarState
from ..exceptions import RuleValidationError

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^rule\s+(?P<name>\S+)(?P<options>(\s+\w+=\S+)*)\s*$")
_MAPPING = re.compile(r"^(?P<state>[01][sw])\s+(?P<counts>[\d\s]+?)\s*->\s*(?P<out>[01][sw])$")


def _strip(line: str) -> str:
    return line.split('#', 1)[0].strip()


def parse_rule(text: str, gamma: Optional[int] = None, allow_partial: bool = False) -> FlipRule:
    """
    Parse rule text into a FlipRule.

    Args:
        text: Rule text
        gamma: Required left degree; raises ArityMismatchError when it differs
        allow_partial: Return a non-total table instead of raising (used by the validator)

    Returns:
        The parsed rule

    Raises:
        RuleValidationError: Malformed text, duplicate or missing entries
    """
    lines = [(number, _strip(line)) for number, line in enumerate(text.splitlines(), 1)]
    lines = [(number, line) for number, line in lines if line]
    if not lines:
        raise RuleValidationError("Rule text is empty")

    number, header = lines[0]
    match = _HEADER.match(header)
    if not match:
        raise RuleValidationError(f"Line {number}: expected 'rule <name> gamma=<g> memory=<0|1>'")
    name = match.group('name')
    options: Dict[str, str] = {}
    for option in match.group('options').split():
        key, value = option.split('=', 1)
        options[key] = value
    try:
        rule_gamma = int(options['gamma'])
        memory = options.get('memory', '0') == '1'
        symmetric = options.get('symmetric', '0') == '1'
    except (KeyError, ValueError) as e:
        raise RuleValidationError(f"Line {number}: bad rule header '{header}'") from e
    if rule_gamma < 1:
        raise RuleValidationError(f"Line {number}: gamma must be positive")

    arity = 3 if memory else 1
    table = empty_table(rule_gamma, memory)
    for number, line in lines[1:]:
        mapping = _MAPPING.match(line)
        if not mapping:
            raise RuleValidationError(f"Line {number}: cannot parse mapping '{line}'")
        state = VarState.from_token(mapping.group('state'))
        out = VarState.from_token(mapping.group('out'))
        counts = tuple(int(tok) for tok in mapping.group('counts').split())
        if len(counts) != arity:
            raise RuleValidationError(f"Line {number}: expected {arity} counts, got {len(counts)}")
        if sum(counts) > rule_gamma:
            raise RuleValidationError(f"Line {number}: counts {counts} exceed gamma={rule_gamma}")
        index = (int(state),) + counts
        if table[index] != UNDEFINED:
            raise RuleValidationError(f"Line {number}: duplicate entry for {state.token} {counts}")
        table[index] = int(out)

    rule = FlipRule(name, rule_gamma, memory, table, symmetric_flag=symmetric)
    if gamma is not None:
        check_arity(rule, gamma)
    if allow_partial:
        return rule

    result = validate_rule_table(rule)
    if not result['valid']:
        raise RuleValidationError(f"Rule '{name}' is invalid: {'; '.join(result['errors'])}")
    for warning in result['warnings']:
        logger.warning(warning)
    return rule


def emit_rule(rule: FlipRule) -> str:
    """Render a rule in the line-oriented text format"""
    header = f"rule {rule.name} gamma={rule.gamma} memory={int(rule.uses_check_memory)}"
    if rule.symmetric_flag:
        header += " symmetric=1"
    lines = [header]
    for state, counts in rule.domain():
        out = int(rule.table[(int(state),) + counts])
        if out == UNDEFINED:
            continue
        lines.append(f"{state.token} {' '.join(str(c) for c in counts)} -> {VarState(out).token}")
    return "\n".join(lines) + "\n"


def validate_rule_syntax(text: str) -> Dict[str, Any]:
    """
    Check rule text without raising.

    Returns:
        The validate_rule_table dictionary, plus 'name' and 'memory' when the
        header parsed
    """
    try:
        rule = parse_rule(text, allow_partial=True)
    except RuleValidationError as e:
        return {'valid': False, 'errors': [str(e)], 'warnings': [], 'name': None, 'memory': None}
    result = validate_rule_table(rule)
    result['name'] = rule.name
    result['memory'] = rule.uses_check_memory
    return result
