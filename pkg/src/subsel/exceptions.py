"""Exception types raised by subsel.

All input-contract violations derive from :class:`InputError` (a ValueError),
so callers can catch one type at an API boundary while tests can distinguish
the specific failure. Out-of-range indices raise the builtin IndexError.
"""

from __future__ import annotations


class InputError(ValueError):
    """Base class for all input-contract violations."""


class DegenerateInputError(InputError):
    """Input is structurally unusable (empty, zero-variance row, all-zero row).

    ``row`` holds the offending row index when one exists.
    """

    def __init__(self, message: str, row: int | None = None):
        super().__init__(message)
        self.row = row


class ConstraintViolationError(InputError):
    """A value violates a domain constraint (e.g. a negative similarity).

    ``position`` holds the offending (row, col) when known.
    """

    def __init__(self, message: str, position: tuple[int, int] | None = None):
        super().__init__(message)
        self.position = position


class TripleValidationError(InputError):
    """A sparse (row, col, value) triple failed validation.

    ``triple_index`` is the position of the offending triple in the input
    sequence and ``triple`` is its content, so callers that read triples from
    a file can map the failure back to a line.
    """

    def __init__(self, message: str, triple_index: int, triple: tuple):
        super().__init__(message)
        self.triple_index = triple_index
        self.triple = triple


class AlreadySelectedError(InputError):
    """A candidate was offered to gain/update but is already selected."""


class EnumerationBoundError(InputError):
    """Brute-force enumeration was refused because C(n, k) is too large."""


class ApproximationFailure(AssertionError):
    """Greedy fell below the guaranteed fraction of the exhaustive optimum.

    Carries both subsets for post-mortem inspection.
    """

    def __init__(self, message: str, greedy_set, opt_set):
        super().__init__(message)
        self.greedy_set = tuple(greedy_set)
        self.opt_set = tuple(opt_set)
