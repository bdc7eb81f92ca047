"""Exception types shared across atlab."""
from __future__ import annotations


class AtlabError(Exception):
    pass


class Graph6Error(AtlabError, ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class CapExceeded(AtlabError):
    """An instance is larger than a desk-scale guard allows.

    ``limit`` names the field of :class:`atlab.limits.Limits` to raise.
    """

    def __init__(self, message: str, limit: str, value, cap):
        super().__init__(f"{message}: {value} > {cap} (raise with --budget {limit}=N)")
        self.limit = limit
        self.value = value
        self.cap = cap


class HypothesisError(AtlabError, ValueError):
    """Input fails a named hypothesis of a constructive operation."""

    def __init__(self, condition: str, detail: str = "", witness=None):
        msg = f"{condition} failed"
        if detail:
            msg += f" {detail}" if detail.startswith("at ") else f": {detail}"
        super().__init__(msg)
        self.condition = condition
        self.detail = detail
        self.witness = witness


class InvariantViolation(AtlabError):
    """An internal guarantee did not hold. Indicates a bug or a hypothesis gap."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
