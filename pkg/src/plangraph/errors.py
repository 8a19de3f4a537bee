"""Exception hierarchy shared across the toolkit.

Every error a user can trigger with bad input derives from ``InputError``
(CLI exit code 1). ``InternalError`` marks violated internal invariants
(exit code 2) and should never be reachable from well-formed input.
"""

from __future__ import annotations


class PlanGraphError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


class InputError(PlanGraphError):
    """Invalid user input: files, flags, or data that violate a contract."""

    def __init__(self, message: str, *, filename: str | None = None,
                 line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.filename = filename
        self.line = line
        self.column = column

    def diagnostic(self) -> str:
        """Format as ``file:line:col: severity: message`` for stderr."""
        where = self.filename or "<input>"
        if self.line is not None:
            where += f":{self.line}"
            if self.column is not None:
                where += f":{self.column}"
        return f"{where}: error: {self}"


class InternalError(PlanGraphError):
    """A violated internal invariant; indicates a bug, not bad input."""

    exit_code = 2


# PDDL frontend
class LexError(InputError):
    """Bad token in PDDL text."""


class ParseError(InputError):
    """Malformed s-expression or unknown PDDL section."""


class ValidationError(InputError):
    """Well-formed PDDL that violates a declaration or arity rule."""


# SAS frontend
class FormatError(InputError):
    """Unexpected section, token, or version in a SAS file."""


class RangeError(InputError):
    """A value index or numeric field outside its allowed range."""


class ConsistencyError(InputError):
    """Structurally valid SAS content with contradictory semantics."""


# Graph core
class SchemaError(InputError):
    """Serialized graph bytes that violate the file schema."""


# Lifted graph builder
class SharingOverflow(InputError):
    """Distinct-structure count exceeded the configured cap."""


class CycleError(InternalError):
    """A cycle where the construction guarantees a DAG."""

    def __init__(self, message: str, cycle: list[int] | None = None):
        super().__init__(message)
        self.cycle = cycle or []


# Stats
class EmptyCorpus(InputError):
    """An aggregate was requested over zero graphs."""


# Dataset ops
class DimensionError(InputError):
    """A vector or matrix with the wrong number of planner columns."""


class MissingPrediction(InputError):
    """Evaluation requested for a task without a prediction row."""


class InfeasibleRatio(InputError):
    """Requested split ratios cannot be realized on this corpus."""
