"""Exception hierarchy for lrcoh.

Every error raised on purpose by the library derives from ``LrcohError`` so the
CLI and the tool server can map them to exit codes / JSON diagnostics.
"""

from typing import Iterable, Optional, Sequence, Tuple


class LrcohError(RuntimeError):
    """Base class for all lrcoh failures."""


class DimensionMismatchError(LrcohError):
    pass


class PolyParseError(LrcohError):
    def __init__(self, message: str, position: Optional[int] = None):
        self.position = position
        where = f" at position {position}" if position is not None else ""
        super().__init__(f"{message}{where}")


class NotHomogeneousError(LrcohError):
    def __init__(self, offending: Iterable[Tuple[int, ...]], degree: int, reason: Optional[str] = None):
        self.offending = sorted(offending)
        self.degree = degree
        super().__init__(
            reason or f"f is not weighted homogeneous of degree {degree}; "
            f"offending exponents: {self.offending}"
        )


class IncompatibleActionError(LrcohError):
    def __init__(self, offending: Iterable[Tuple[int, ...]], m: int):
        self.offending = sorted(offending)
        self.m = m
        super().__init__(
            f"action does not fix f: sum(alpha_i * m_i) is not 0 mod {m} for {self.offending}"
        )


class NotInSpanError(LrcohError):
    """A derivation is not in the span of the chosen generators (bound too small)."""


class ScalarInconsistencyError(LrcohError):
    pass


class InvalidConnectionError(LrcohError):
    def __init__(self, violations: Sequence[str]):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid connection")


class NonIntegrableError(LrcohError):
    pass


class GaloisHypothesisError(LrcohError):
    pass


class InstabilityError(LrcohError):
    pass


class ProblemFileError(LrcohError):
    pass
