"""Exception types shared across the package."""

from __future__ import annotations


class FanRamseyError(Exception):
    """Base class for all package-specific errors."""


class PreconditionViolated(FanRamseyError, ValueError):
    """An operation was called outside its stated contract."""


class SelfPairError(PreconditionViolated):
    pass


class VertexRangeError(PreconditionViolated):
    pass


class DuplicatePairError(PreconditionViolated):
    pass


class MissingPairError(PreconditionViolated):
    pass


class ColoringFormatError(FanRamseyError, ValueError):
    """Malformed coloring file.  Carries 1-based line and 0-based offset."""

    def __init__(self, message: str, line: int = 0, offset: int = 0):
        super().__init__(f"{message} (line {line}, offset {offset})")
        self.line = line
        self.offset = offset


class StructureSearchFailure(FanRamseyError):
    """The guaranteed-success structure search found nothing.

    Never expected on inputs meeting the precondition; signals an
    implementation bug or a violated precondition.
    """


class ConstructionFailure(FanRamseyError):
    """A guaranteed fan construction fell short.  Signals a bug."""


class InternalError(FanRamseyError):
    """An internally asserted invariant failed.  Signals a bug."""


class UnreachableBranch(FanRamseyError):
    """An execution path that cannot occur on valid inputs fired.

    Every terminal counting argument in the extractor ends in one of
    these.  Firing one is always a bug report, never an expected outcome;
    the label and details identify the branch for diagnosis.
    """

    def __init__(self, label: str, **details):
        super().__init__(f"unreachable branch fired: {label} {details!r}")
        self.label = label
        self.details = details
