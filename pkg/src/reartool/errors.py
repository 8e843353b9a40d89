"""Exception types shared across the package."""

from __future__ import annotations


class RearToolError(Exception):
    """Base class for all library errors."""


class DomainMismatch(RearToolError):
    """Two objects defined on different intervals (0, R) were combined."""


class NonIntegrable(RearToolError):
    """An integral came out +infinity where the caller required a finite value."""


class NonIntegrableHead(NonIntegrable):
    """The integral of f* diverges already at the left endpoint, so f** does not exist."""


class NotQuasiconcave(RearToolError):
    """A candidate failed one of the three defining conditions.

    ``clause`` is one of "zero-value", "not-nondecreasing",
    "ratio-not-nonincreasing"; ``where`` locates the first violation.
    """

    def __init__(self, clause: str, where: float | str = "", detail: str = ""):
        self.clause = clause
        self.where = where
        msg = f"not quasiconcave ({clause}"
        if where != "":
            msg += f" at t~{where}"
        msg += ")"
        if detail:
            msg += ": " + detail
        super().__init__(msg)


class CharacterizationDisagreement(RearToolError):
    """The independent decision methods returned different verdicts."""


class TrivialSpace(RearToolError):
    """The weighted space degenerates; ``clause`` says which identification."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"space is degenerate ({clause})" + (": " + detail if detail else ""))


class PreconditionViolated(RearToolError):
    """A documented precondition of an operation does not hold."""

    def __init__(self, clause: str, detail: str = ""):
        self.clause = clause
        super().__init__(f"precondition failed ({clause})" + (": " + detail if detail else ""))
