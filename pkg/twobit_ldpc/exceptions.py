"""
Exception types for twobit-ldpc

Format and precondition problems are ValueErrors, exhausted searches and
budgets are RuntimeErrors. Everything shares the TwoBitError mixin.
"""


class TwoBitError(Exception):
    """Base mixin for every error raised by this package"""


class AlistFormatError(TwoBitError, ValueError):
    """Malformed alist text (counts, degrees or indices)"""


class BaseMatrixError(TwoBitError, ValueError):
    """Malformed base matrix or a base that would create multi-edges"""


class GraphConstructionError(TwoBitError, ValueError):
    """Adjacency lists that do not describe a valid left-regular Tanner graph"""


class RuleValidationError(TwoBitError, ValueError):
    """Rule table is not total, malformed, or declared over the wrong domain"""


class ArityMismatchError(TwoBitError, ValueError):
    """Rule gamma does not match the left degree of the graph"""


class SearchExhaustedError(TwoBitError, RuntimeError):
    """Shift search ran out of attempts without meeting the girth target"""


class BudgetExceededError(TwoBitError, RuntimeError):
    """A sweep or enumeration would exceed its configured budget"""
