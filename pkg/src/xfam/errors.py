"""Exception types shared across the package."""

from __future__ import annotations


class XfamError(Exception):
    """Base class for all package errors."""


class ParameterError(XfamError, ValueError):
    """Parameters outside the domain of an operation."""


class CapError(XfamError):
    """A size cap would be exceeded (search too large for exhaustive methods)."""


class HypothesisError(XfamError):
    """A lemma was invoked on an input that violates one of its hypotheses."""

    def __init__(self, hypothesis: str, detail: str = ""):
        self.hypothesis = hypothesis
        self.detail = detail
        msg = f"hypothesis failed: {hypothesis}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class LemmaViolation(XfamError):
    """A lemma's conclusion failed on an input satisfying all hypotheses.

    Carries a JSON-serializable counterexample record; this should never
    happen and is preserved verbatim for inspection.
    """

    def __init__(self, lemma: str, message: str, counterexample: dict):
        self.lemma = lemma
        self.counterexample = counterexample
        super().__init__(f"{lemma}: {message}")
