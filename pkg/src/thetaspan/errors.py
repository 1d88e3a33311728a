"""Exception hierarchy shared by all thetaspan modules."""


class ThetaSpanError(Exception):
    """Base class for every error raised by this package."""


class DegenerateInputError(ThetaSpanError, ValueError):
    """Coincident points or otherwise geometrically meaningless input."""


class DomainError(ThetaSpanError, ValueError):
    """Arguments outside the domain where a formula is defined."""


class HypothesisViolation(ThetaSpanError, ValueError):
    """Inputs do not satisfy the hypothesis of a lemma oracle."""


class FamilyError(ThetaSpanError, ValueError):
    """Cone count outside the supported families (m < 6)."""


class GeneralPositionError(ThetaSpanError, ValueError):
    """Point set failed general-position validation in strict mode."""

    def __init__(self, report):
        self.report = report
        super().__init__(f"{len(report.violations)} general-position violation(s)")


class DisconnectedError(ThetaSpanError, RuntimeError):
    """No path between two vertices; for m >= 6 this indicates a bug."""


class GadgetError(ThetaSpanError, AssertionError):
    """An adversarial construction failed its own self-check."""


class ParseError(ThetaSpanError, ValueError):
    """Malformed input file; ``offset`` is the byte position when known."""

    def __init__(self, message: str, offset: int | None = None):
        self.offset = offset
        super().__init__(message if offset is None else f"{message} (byte offset {offset})")
