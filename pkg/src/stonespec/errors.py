"""Exception types shared across the package.

Everything raised on bad or out-of-contract input derives from
:class:`InputError`; the CLI maps these to exit code 2.  A check that
fails on data the library itself produced (a law that should be a
theorem) raises :class:`InternalContradiction`, which is a bug signal,
never a data error.  :class:`CheckFailed` marks a completed analysis
whose verdict is negative; the CLI maps it to exit code 1.

Errors carry an optional ``witness`` payload holding the offending
elements so callers can replay the violation.
"""

from __future__ import annotations


class StonespecError(Exception):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class InputError(StonespecError):
    """Bad document, unknown name, or argument outside the contract."""


class ParseError(InputError):
    pass


# lattice-core
class NotAPoset(InputError):
    pass


class NotALattice(InputError):
    pass


class NoBounds(InputError):
    pass


class UnknownName(InputError):
    pass


# orthocomplement layer
class NotAnOrthocomplement(InputError):
    pass


class EmptySubset(InputError):
    pass


class NotOrthomodular(InputError):
    pass


class NotASublattice(InputError):
    pass


class NotCentral(InputError):
    pass


# enumeration bounds
class SizeBound(InputError):
    pass


class SearchBudgetExceeded(InputError):
    pass


# quotients
class NotBoolean(InputError):
    pass


class NotAnIdeal(InputError):
    pass


class ImproperIdeal(InputError):
    pass


# finite spaces
class NotATopology(InputError):
    pass


class NotAQuasipoint(InputError):
    pass


# spectral data
class NotMonotone(InputError):
    pass


class TopMissing(InputError):
    pass


class UnsortedThresholds(InputError):
    pass


class NotContinuous(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class NoThresholdInIdeal(StonespecError):
    """Raised if an evaluation finds no threshold inside a dual ideal.

    Unreachable when the family's last value is the top element, which
    every dual ideal contains; kept as a named surface so the assertion
    is visible rather than implicit.
    """


# presheaves
class MissingMap(InputError):
    pass


class FunctorialityViolation(InputError):
    pass


# verdicts
class InternalContradiction(StonespecError):
    """A law that should hold on this input failed; implementation bug."""


class CheckFailed(StonespecError):
    """An analysis ran to completion and its verdict is negative."""
