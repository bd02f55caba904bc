"""Exception hierarchy shared by the parser, evaluator and verifier."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class SourceSpan:
    """Byte offsets ``[start, end)`` into the parsed text."""

    start: int
    end: int

    def __post_init__(self) -> None:
        if self.start > self.end:
            raise ValueError(f"span start {self.start} > end {self.end}")

    def __str__(self) -> str:
        return f"{self.start}..{self.end}"


class ExactPDEError(Exception):
    """Base class; carries an optional source span."""

    def __init__(self, message: str, span: SourceSpan | None = None):
        self.message = message
        self.span = span
        super().__init__(message if span is None else f"{message} (at {span})")


# parsing / schema


class ExprSyntaxError(ExactPDEError):
    pass


class UnboundName(ExactPDEError):
    pass


class ValidationError(ExactPDEError):
    pass


class SchemaError(ExactPDEError):
    def __init__(self, entry_id: str | None, reason: str):
        self.entry_id = entry_id
        self.reason = reason
        super().__init__(f"{entry_id or '<catalog>'}: {reason}")


class NotFound(ExactPDEError):
    pass


class ConstraintViolation(ExactPDEError):
    pass


# evaluation


class EvaluationError(ExactPDEError):
    """Any numeric fault raised while evaluating an expression."""

    #: window faults mark a singular sample point rather than a wrong formula
    window_fault = True


class DomainError(EvaluationError):
    pass


class DivisionByZero(EvaluationError):
    pass


class NonFinite(EvaluationError):
    pass


class QuadratureFailure(EvaluationError):
    window_fault = False


class RootNotFound(EvaluationError):
    pass


class NoBracket(RootNotFound):
    pass


class ConvergenceFailure(RootNotFound):
    window_fault = False


class SingularJacobian(RootNotFound):
    pass


class BranchJump(EvaluationError):
    """A root or branch switched between neighbouring sample points."""

    window_fault = False


class SamplingExhausted(ExactPDEError):
    pass
