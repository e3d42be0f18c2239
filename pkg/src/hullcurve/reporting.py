"""Verification report record shared by all inequality and identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

__all__ = ["VerificationReport"]


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one checked inequality or identity.

    margin is the slack: rhs - lhs for upper bounds, lhs - rhs for lower
    bounds, -|lhs - rhs| for two-sided identities.  stat_error is the
    one-sigma statistical error of the comparison (0 for exact paths).
    A check passes when the margin is not negative beyond the 3-sigma
    band, so statistical noise is never reported as a violation.
    """

    name: str
    lhs: float
    rhs: float
    margin: float
    stat_error: float
    passed: bool
    metadata: dict = field(default_factory=dict)

    @classmethod
    def build(cls, name, lhs, rhs, margin, stat_error, metadata=None):
        return cls(name=name, lhs=float(lhs), rhs=float(rhs), margin=float(margin),
                   stat_error=float(stat_error),
                   passed=bool(margin >= -3.0 * stat_error),
                   metadata=dict(metadata or {}))

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "margin": self.margin, "stderr": self.stat_error,
                "pass": self.passed, "metadata": self.metadata}
