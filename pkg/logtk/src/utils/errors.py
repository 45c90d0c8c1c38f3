"""Custom exception types for logtk.

Distinct exception types let the command layer map each failure to an exit
code and a readable message.  Verdicts that *fail* are ordinary values; the
exceptions below are reserved for malformed input and violated preconditions.
"""

from __future__ import annotations

from typing import Optional, Sequence


class LogtkError(Exception):
    """Base class for all custom errors in logtk."""


class IllFormedMap(LogtkError):
    """Raised when a map does not respect the relations of its source."""


class PointedMonoid(LogtkError):
    """Raised when an operation needs a monoid without absorbing element."""


class NotIntegral(LogtkError):
    """Raised when a monoid must be integral but is not."""


class TorsionCompletion(LogtkError):
    """Raised when the group completion of a monoid has torsion."""


class BudgetExceeded(LogtkError):
    """Raised when a bounded enumeration runs past its configured budget."""


class ImproperIdeal(LogtkError):
    """Raised when a monoid ideal contains a unit."""


class NotSurjective(LogtkError):
    """Raised when a homomorphism required to be surjective is not."""


class NotMinimal(LogtkError):
    """Raised when a sequence is not a minimal generating system."""


class PreconditionError(LogtkError):
    """Raised when a decision procedure is called outside its hypotheses."""

    def __init__(self, procedure: str, reason: str, hint: Optional[str] = None) -> None:
        self.procedure = procedure
        self.reason = reason
        self.hint = hint
        message = f"{procedure}: {reason}"
        if hint:
            message += f" ({hint})"
        super().__init__(message)


class ReplayMismatch(LogtkError):
    """Raised when a certificate claim does not re-verify or the status does not follow from the claims."""


class ManifestError(LogtkError):
    """Base class for manifest problems."""


class ManifestSyntaxError(ManifestError):
    """Positioned syntax error in a manifest."""

    def __init__(self, line: int, column: int, expected: Sequence[str], found: str = "") -> None:
        self.line = line
        self.column = column
        self.expected = tuple(expected)
        self.found = found
        wanted = " or ".join(self.expected) if self.expected else "end of line"
        detail = f", found {found!r}" if found else ""
        super().__init__(f"line {line}, column {column}: expected {wanted}{detail}")


class UnresolvedReference(ManifestError):
    """Raised when a manifest names a section that does not exist."""

    def __init__(self, identifier: str, where: str = "") -> None:
        self.identifier = identifier
        suffix = f" (referenced from {where})" if where else ""
        super().__init__(f"unresolved reference {identifier!r}{suffix}")


class DuplicateName(ManifestError):
    """Raised when two manifest sections share a name."""

    def __init__(self, identifier: str) -> None:
        self.identifier = identifier
        super().__init__(f"duplicate name {identifier!r}")


class NotSharp(PreconditionError):
    """Raised when a monoid must be sharp but has nontrivial units."""
