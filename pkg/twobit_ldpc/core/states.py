"""
Variable and check node alphabets for two-bit bit flipping

A variable node holds one of four values {0s, 0w, 1w, 1s}. The integer value
of each member is its two-bit code (hard bit, strength bit), so the hard
decision is ``value >> 1`` and exchanging 0 and 1 is ``value ^ 2``.
"""

from enum import IntEnum
from typing import Iterable, List, Sequence
import logging

import numpy as np

logger = logging.getLogger(__name__)


class VarState(IntEnum):
    """Two-bit variable node value: 0s, 0w, 1w, 1s encoded as 01, 00, 10, 11"""

    ZERO_WEAK = 0b00
    ZERO_STRONG = 0b01
    ONE_WEAK = 0b10
    ONE_STRONG = 0b11

    @property
    def hard(self) -> int:
        """Bit seen by the check nodes"""
        return int(self) >> 1

    @property
    def strong(self) -> bool:
        return bool(int(self) & 1)

    def swap01(self) -> "VarState":
        """Exchange 0s<->1s and 0w<->1w"""
        return VarState(int(self) ^ 0b10)

    @property
    def token(self) -> str:
        return _TOKENS[self]

    @classmethod
    def from_token(cls, token: str) -> "VarState":
        try:
            return _FROM_TOKEN[token.strip().lower()]
        except KeyError:
            raise ValueError(f"Unknown variable state '{token}', expected one of {list(_FROM_TOKEN)}")

    @classmethod
    def strong_of(cls, bit: int) -> "VarState":
        return cls.ONE_STRONG if bit else cls.ZERO_STRONG

    @classmethod
    def weak_of(cls, bit: int) -> "VarState":
        return cls.ONE_WEAK if bit else cls.ZERO_WEAK

    def __str__(self) -> str:
        return self.token


_TOKENS = {
    VarState.ZERO_STRONG: "0s",
    VarState.ZERO_WEAK: "0w",
    VarState.ONE_WEAK: "1w",
    VarState.ONE_STRONG: "1s",
}
_FROM_TOKEN = {token: state for state, token in _TOKENS.items()}

# Order used by tables and rule text
STATE_ORDER = (VarState.ZERO_STRONG, VarState.ZERO_WEAK, VarState.ONE_WEAK, VarState.ONE_STRONG)


class CheckState(IntEnum):
    """Check classification against the previous iteration"""

    PREV_SAT = 0
    NEWLY_SAT = 1
    PREV_UNSAT = 2
    NEWLY_UNSAT = 3

    @property
    def satisfied(self) -> bool:
        return self in (CheckState.PREV_SAT, CheckState.NEWLY_SAT)

    @property
    def token(self) -> str:
        return _CHECK_TOKENS[self]

    @classmethod
    def from_token(cls, token: str) -> "CheckState":
        for state, tok in _CHECK_TOKENS.items():
            if tok == token:
                return state
        raise ValueError(f"Unknown check state '{token}'")


_CHECK_TOKENS = {
    CheckState.PREV_SAT: "sp",
    CheckState.NEWLY_SAT: "sn",
    CheckState.PREV_UNSAT: "up",
    CheckState.NEWLY_UNSAT: "un",
}


def classify_check(sat_before: bool, sat_now: bool) -> CheckState:
    """Classify one check from its satisfaction in the previous and current iteration"""
    if sat_now:
        return CheckState.PREV_SAT if sat_before else CheckState.NEWLY_SAT
    return CheckState.NEWLY_UNSAT if sat_before else CheckState.PREV_UNSAT


def classify_checks(sat_before: np.ndarray, sat_now: np.ndarray) -> np.ndarray:
    """Vectorized classify_check; returns an int8 array of CheckState codes"""
    before = np.asarray(sat_before, dtype=bool)
    now = np.asarray(sat_now, dtype=bool)
    codes = np.where(
        now,
        np.where(before, CheckState.PREV_SAT, CheckState.NEWLY_SAT),
        np.where(before, CheckState.NEWLY_UNSAT, CheckState.PREV_UNSAT),
    )
    return codes.astype(np.int8)


class Assignment:
    """Per-variable two-bit states of a whole word"""

    def __init__(self, states: Iterable[int]):
        self.states = np.asarray(list(states) if not isinstance(states, np.ndarray) else states,
                                 dtype=np.int8)

    @classmethod
    def from_hard(cls, word: Sequence[int]) -> "Assignment":
        """Channel initialisation: 0 -> 0s, 1 -> 1s"""
        bits = np.asarray(word, dtype=np.int8) & 1
        return cls((bits << 1) | 1)

    def hard(self) -> np.ndarray:
        return (self.states >> 1).astype(np.int8)

    def swap01(self) -> "Assignment":
        return Assignment(self.states ^ 0b10)

    def tokens(self) -> List[str]:
        return [VarState(int(s)).token for s in self.states]

    def __len__(self) -> int:
        return int(self.states.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Assignment):
            return NotImplemented
        return bool(np.array_equal(self.states, other.states))

    def __repr__(self) -> str:
        return f"Assignment({' '.join(self.tokens())})"
