"""Exception taxonomy for the lattice toolkit.

Every failure mode that callers are expected to handle gets its own class.
Errors that indicate a bug in the toolkit itself (a verified invariant not
holding) derive from InternalVerificationFailed; user-facing code should
never need to catch those.
"""
from __future__ import annotations


class LatticeError(Exception):
    """Base class for all toolkit errors."""


class CycleDetected(LatticeError):
    """Cover or strict-order input contains a directed cycle."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotALattice(LatticeError):
    """A poset is missing a meet or a join; `witness` names an offending pair."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class UnknownName(LatticeError):
    """Catalog lookup with a name that is not in the catalog."""


class ParameterOutOfRange(LatticeError):
    """Numeric parameter outside its documented range."""


class SizeOverflow(LatticeError):
    """A construction would exceed the configured element cap."""


class NotComparable(LatticeError):
    """Interval endpoints are not ordered."""


class CapExceeded(LatticeError):
    """An enumeration or search exceeded its configured cap."""


class FunctionSpaceCapExceeded(CapExceeded):
    """Unary polynomial closure passed the function cap before reaching a verdict.

    The caller holds neither a positive nor a negative answer: the check is
    inconclusive, not failed.
    """


class InternalVerificationFailed(LatticeError):
    """A machine-checked invariant of the toolkit itself did not hold."""


class NotALatticeUnderPruning(InternalVerificationFailed):
    """Pruning a product destroyed the order or a meet/join; carries a witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ComparableInput(LatticeError):
    """A formula defined only for incomparable pairs was fed a comparable pair."""


class NotDistributive(LatticeError):
    """Operation requires a distributive lattice."""


class VerificationFailed(LatticeError):
    """A constructed object failed its post-construction verification.

    `subject` carries the object that failed, `diagnostics` a list of
    human-readable findings.
    """

    def __init__(self, message: str, subject=None, diagnostics=None):
        super().__init__(message)
        self.subject = subject
        self.diagnostics = list(diagnostics) if diagnostics else []


class BudgetExhausted(LatticeError):
    """A bounded search ran out of budget before finding its target."""


class NotAnEmbedding(LatticeError):
    """A claimed lattice embedding is not injective or not operation-preserving."""


class NotSeparable(LatticeError):
    """A designated separator is not doubly atomic (bottom-cover and top-cocover)."""
